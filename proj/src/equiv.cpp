#include "fairlts/equiv.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace fairlts {

namespace {

constexpr int kUnremoved = std::numeric_limits<int>::max();

using StateSet = std::vector<int>;  // sorted, unique

void check_process(const Lts& lts, int p) {
  if (p < 0 || p >= lts.state_count())
    throw std::out_of_range("process state " + std::to_string(p) + " out of range");
}

StateSet step(const Lts& lts, const StateSet& set, int action) {
  std::set<int> out;
  for (int s : set)
    for (int t : lts.successors(s, action)) out.insert(t);
  return StateSet(out.begin(), out.end());
}

// Refusal test: keeps the states whose maximal refusal contains `letter`.
StateSet filter_refusal(const Lts& lts, const StateSet& set, ActionMask letter) {
  StateSet out;
  for (int s : set)
    if ((letter & ~lts.maximal_refusal(s)) == 0) out.push_back(s);
  return out;
}

// Ready test: keeps the states whose ready set equals `letter` exactly.
StateSet filter_ready(const Lts& lts, const StateSet& set, ActionMask letter) {
  StateSet out;
  for (int s : set)
    if (lts.enabled(s) == letter) out.push_back(s);
  return out;
}

std::vector<ActionMask> ready_sets_of(const Lts& lts, const StateSet& set) {
  std::set<ActionMask> out;
  for (int s : set) out.insert(lts.enabled(s));
  return {out.begin(), out.end()};
}

// Maximal elements of the refusal sets of `set`: the canonical summary
// of all failure pairs available after the access word.
std::vector<ActionMask> refusal_antichain(const Lts& lts, const StateSet& set) {
  std::set<ActionMask> all;
  for (int s : set) all.insert(lts.maximal_refusal(s));
  std::vector<ActionMask> out;
  for (ActionMask x : all) {
    bool dominated = false;
    for (ActionMask y : all)
      if (x != y && (x & ~y) == 0) dominated = true;
    if (!dominated) out.push_back(x);
  }
  return out;
}

std::vector<int> class_ids_of(const std::vector<int>& classes, const StateSet& set) {
  std::set<int> out;
  for (int s : set) out.insert(classes[s]);
  return {out.begin(), out.end()};
}

// Set letters worth testing at a pair of subsets under the refusal
// semantics: the closure under intersection of the maximal refusals in
// play. Any other letter filters both subsets exactly like one of these.
std::vector<ActionMask> refusal_letters(const Lts& lts, const StateSet& a, const StateSet& b) {
  std::set<ActionMask> closure;
  for (int s : a) closure.insert(lts.maximal_refusal(s));
  for (int s : b) closure.insert(lts.maximal_refusal(s));
  std::deque<ActionMask> work(closure.begin(), closure.end());
  while (!work.empty()) {
    ActionMask x = work.front();
    work.pop_front();
    for (ActionMask y : std::vector<ActionMask>(closure.begin(), closure.end())) {
      ActionMask z = x & y;
      if (closure.insert(z).second) work.push_back(z);
    }
  }
  return {closure.begin(), closure.end()};
}

std::vector<ActionMask> ready_letters(const Lts& lts, const StateSet& a, const StateSet& b) {
  std::set<ActionMask> out;
  for (int s : a) out.insert(lts.enabled(s));
  for (int s : b) out.insert(lts.enabled(s));
  return {out.begin(), out.end()};
}

enum class LangKind { Trace, Failures, Ready, FailureTrace, ReadyTrace, PossibleFutures };

struct PairNode {
  StateSet left, right;
  int parent = -1;
  ExtendedLetter via;
};

struct Mismatch {
  ExtWord word;
  int present_in = 0;
  bool is_annotation = false;
  ActionMask ann_set = 0;  // Failures/Ready mismatch element
  int ann_class = -1;      // PossibleFutures mismatch element
  StateSet reached;        // nonempty side's subset at a step mismatch
};

struct Explorer {
  const Lts& lts;
  LangKind kind;
  const EquivOptions* options = nullptr;
  const std::vector<int>* classes = nullptr;

  std::vector<PairNode> nodes;
  std::set<std::pair<StateSet, StateSet>> visited;
  std::optional<Mismatch> found;

  ExtWord word_of(int node, const std::optional<ExtendedLetter>& extra) const {
    ExtWord w;
    for (int i = node; i >= 0; i = nodes[i].parent)
      if (nodes[i].parent >= 0) w.push_back(nodes[i].via);
    std::reverse(w.begin(), w.end());
    if (extra) w.push_back(*extra);
    return w;
  }

  // Annotation comparison for the kinds that carry one. Returns true if
  // a mismatch was recorded.
  bool check_annotation(int node) {
    const StateSet& a = nodes[node].left;
    const StateSet& b = nodes[node].right;
    if (kind == LangKind::Ready) {
      auto ra = ready_sets_of(lts, a), rb = ready_sets_of(lts, b);
      if (ra == rb) return false;
      std::vector<ActionMask> diff;
      std::set_symmetric_difference(ra.begin(), ra.end(), rb.begin(), rb.end(),
                                    std::back_inserter(diff));
      ActionMask x = diff.front();
      bool in_a = std::binary_search(ra.begin(), ra.end(), x);
      found = Mismatch{word_of(node, std::nullopt), in_a ? 0 : 1, true, x, -1, {}};
      return true;
    }
    if (kind == LangKind::Failures) {
      auto ra = refusal_antichain(lts, a), rb = refusal_antichain(lts, b);
      if (ra == rb) return false;
      // Pick a maximal refusal of one side not dominated on the other;
      // the corresponding failure pair exists on exactly one side.
      auto undominated = [](const std::vector<ActionMask>& from,
                            const std::vector<ActionMask>& other) -> std::optional<ActionMask> {
        for (ActionMask x : from) {
          bool dominated = false;
          for (ActionMask y : other)
            if ((x & ~y) == 0) dominated = true;
          if (!dominated) return x;
        }
        return std::nullopt;
      };
      if (auto x = undominated(ra, rb)) {
        found = Mismatch{word_of(node, std::nullopt), 0, true, *x, -1, {}};
        return true;
      }
      auto x = undominated(rb, ra);
      assert(x);
      found = Mismatch{word_of(node, std::nullopt), 1, true, *x, -1, {}};
      return true;
    }
    if (kind == LangKind::PossibleFutures) {
      auto ca = class_ids_of(*classes, a), cb = class_ids_of(*classes, b);
      if (ca == cb) return false;
      std::vector<int> diff;
      std::set_symmetric_difference(ca.begin(), ca.end(), cb.begin(), cb.end(),
                                    std::back_inserter(diff));
      int c = diff.front();
      bool in_a = std::binary_search(ca.begin(), ca.end(), c);
      found = Mismatch{word_of(node, std::nullopt), in_a ? 0 : 1, true, 0, c, {}};
      return true;
    }
    return false;
  }

  void offer(int parent, ExtendedLetter via, StateSet&& a, StateSet&& b) {
    if (found) return;
    if (a.empty() && b.empty()) return;
    if (a.empty() != b.empty()) {
      int side = a.empty() ? 1 : 0;
      found = Mismatch{word_of(parent, via), side, false, 0, -1,
                       a.empty() ? std::move(b) : std::move(a)};
      return;
    }
    if (!visited.insert({a, b}).second) return;
    nodes.push_back({std::move(a), std::move(b), parent, via});
    check_annotation(static_cast<int>(nodes.size()) - 1);
  }

  std::optional<Mismatch> run(int p, int q) {
    StateSet a{p}, b{q};
    visited.insert({a, b});
    nodes.push_back({a, b, -1, {}});
    if (check_annotation(0)) return found;
    for (size_t head = 0; head < nodes.size() && !found; ++head) {
      // nodes may reallocate inside offer(); copy the subsets out
      StateSet left = nodes[head].left, right = nodes[head].right;
      for (int action = 0; action < lts.alphabet_size() && !found; ++action) {
        offer(static_cast<int>(head), ExtendedLetter::make_action(action),
              step(lts, left, action), step(lts, right, action));
      }
      if (kind == LangKind::FailureTrace) {
        std::vector<ActionMask> letters;
        if (options && options->failure_trace_full_powerset) {
          ActionMask full = lts.full_mask();
          for (ActionMask x = 0;; ++x) {
            letters.push_back(x);
            if (x == full) break;
          }
        } else {
          letters = refusal_letters(lts, left, right);
        }
        for (ActionMask x : letters) {
          if (found) break;
          offer(static_cast<int>(head), ExtendedLetter::make_set(x),
                filter_refusal(lts, left, x), filter_refusal(lts, right, x));
        }
      } else if (kind == LangKind::ReadyTrace) {
        for (ActionMask x : ready_letters(lts, left, right)) {
          if (found) break;
          offer(static_cast<int>(head), ExtendedLetter::make_set(x),
                filter_ready(lts, left, x), filter_ready(lts, right, x));
        }
      }
    }
    return found;
  }
};

Word plain_word(const ExtWord& w) {
  Word out;
  for (const ExtendedLetter& l : w) {
    assert(l.is_action());
    out.push_back(l.action);
  }
  return out;
}

int class_rep(const std::vector<int>& classes, int cls) {
  for (size_t s = 0; s < classes.size(); ++s)
    if (classes[s] == cls) return static_cast<int>(s);
  return -1;
}

// ---- rank tables for game witnesses ----
//
// rank[u][v] = round at which (u, v) fell out of the candidate relation
// under Jacobi-style refinement, kUnremoved for surviving pairs. Rounds
// give the strictly decreasing measure that makes the extracted attacker
// strategy well-founded.

std::vector<std::vector<int>> simulation_ranks(const Lts& lts) {
  const int n = lts.state_count();
  std::vector<std::vector<int>> rank(n, std::vector<int>(n, kUnremoved));
  auto related = [&](int u, int v, int round) { return rank[u][v] >= round; };
  for (int round = 1;; ++round) {
    bool changed = false;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (rank[u][v] != kUnremoved) continue;
        bool ok = true;
        for (int a = 0; a < lts.alphabet_size() && ok; ++a)
          for (int ut : lts.successors(u, a)) {
            bool matched = false;
            for (int vt : lts.successors(v, a))
              if (related(ut, vt, round)) {
                matched = true;
                break;
              }
            if (!matched) {
              ok = false;
              break;
            }
          }
        if (!ok) {
          rank[u][v] = round;
          changed = true;
        }
      }
    if (!changed) return rank;
  }
}

std::vector<std::vector<int>> bisimulation_ranks(const Lts& lts) {
  const int n = lts.state_count();
  std::vector<std::vector<int>> rank(n, std::vector<int>(n, kUnremoved));
  auto related = [&](int u, int v, int round) { return rank[u][v] >= round; };
  for (int round = 1;; ++round) {
    bool changed = false;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (rank[u][v] != kUnremoved) continue;
        bool ok = true;
        for (int a = 0; a < lts.alphabet_size() && ok; ++a) {
          for (int ut : lts.successors(u, a)) {
            bool matched = false;
            for (int vt : lts.successors(v, a))
              if (related(ut, vt, round)) matched = true;
            if (!matched) ok = false;
          }
          for (int vt : lts.successors(v, a)) {
            bool matched = false;
            for (int ut : lts.successors(u, a))
              if (related(ut, vt, round)) matched = true;
            if (!matched) ok = false;
          }
        }
        if (!ok) {
          rank[u][v] = round;
          changed = true;
        }
      }
    if (!changed) return rank;
  }
}

// Attacker strategy from a rank table. `both_sides` enables switching
// sides (bisimulation); otherwise the attacker stays on side 0 and the
// tree proves "left not simulated by right".
GameNode build_attack(const Lts& lts, const std::vector<std::vector<int>>& rank, int u, int v,
                      bool both_sides) {
  const int r = rank[u][v];
  assert(r != kUnremoved);
  for (int side = 0; side < (both_sides ? 2 : 1); ++side) {
    int from = side == 0 ? u : v;
    int other = side == 0 ? v : u;
    for (int a = 0; a < lts.alphabet_size(); ++a) {
      for (int target : lts.successors(from, a)) {
        bool winning = true;
        for (int reply : lts.successors(other, a)) {
          int ru = side == 0 ? rank[target][reply] : rank[reply][target];
          if (ru >= r) {
            winning = false;
            break;
          }
        }
        if (!winning) continue;
        GameNode node{side, a, target, {}};
        for (int reply : lts.successors(other, a)) {
          GameNode child = side == 0 ? build_attack(lts, rank, target, reply, both_sides)
                                     : build_attack(lts, rank, reply, target, both_sides);
          node.replies.emplace_back(reply, std::move(child));
        }
        return node;
      }
    }
  }
  throw std::logic_error("no attacker move at a removed pair");
}

bool game_wins(const Lts& lts, int left, int right, const GameNode& node) {
  int from = node.side == 0 ? left : right;
  int other = node.side == 0 ? right : left;
  const auto& moves = lts.successors(from, node.action);
  if (!std::binary_search(moves.begin(), moves.end(), node.target)) return false;
  for (int reply : lts.successors(other, node.action)) {
    const GameNode* child = nullptr;
    for (const auto& [key, sub] : node.replies)
      if (key == reply) child = &sub;
    if (!child) return false;
    int nl = node.side == 0 ? node.target : reply;
    int nr = node.side == 0 ? reply : node.target;
    if (!game_wins(lts, nl, nr, *child)) return false;
  }
  return true;
}

Verdict equivalent_verdict(SemanticsKind kind) { return {kind, true, std::nullopt}; }

Verdict witness_verdict(SemanticsKind kind, int present_in,
                        std::variant<TraceWitness, SetWitness, ExtendedWitness, FutureWitness,
                                     GameWitness>
                            data) {
  Verdict v{kind, false, Witness{kind, present_in, std::move(data)}};
  return v;
}

}  // namespace

const char* to_string(SemanticsKind kind) {
  switch (kind) {
    case SemanticsKind::Trace: return "trace";
    case SemanticsKind::Failures: return "failures";
    case SemanticsKind::Ready: return "ready";
    case SemanticsKind::FailureTrace: return "failure-trace";
    case SemanticsKind::ReadyTrace: return "ready-trace";
    case SemanticsKind::PossibleFutures: return "possible-futures";
    case SemanticsKind::Simulation: return "simulation";
    case SemanticsKind::Bisimulation: return "bisimulation";
  }
  return "?";
}

std::optional<SemanticsKind> semantics_from_string(std::string_view name) {
  for (SemanticsKind k : all_semantics())
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::vector<SemanticsKind> all_semantics() {
  return {SemanticsKind::Trace,          SemanticsKind::Failures,
          SemanticsKind::Ready,          SemanticsKind::FailureTrace,
          SemanticsKind::ReadyTrace,     SemanticsKind::PossibleFutures,
          SemanticsKind::Simulation,     SemanticsKind::Bisimulation};
}

const std::vector<std::pair<SemanticsKind, SemanticsKind>>& spectrum_edges() {
  using K = SemanticsKind;
  static const std::vector<std::pair<K, K>> edges = {
      {K::Bisimulation, K::ReadyTrace},     {K::Bisimulation, K::PossibleFutures},
      {K::Bisimulation, K::Simulation},     {K::PossibleFutures, K::Ready},
      {K::ReadyTrace, K::Ready},            {K::ReadyTrace, K::FailureTrace},
      {K::Ready, K::Failures},              {K::FailureTrace, K::Failures},
      {K::Failures, K::Trace},              {K::Simulation, K::Trace},
  };
  return edges;
}

bool spectrum_implies(SemanticsKind finer, SemanticsKind coarser) {
  if (finer == coarser) return true;
  for (const auto& [f, c] : spectrum_edges())
    if (f == finer && spectrum_implies(c, coarser)) return true;
  return false;
}

std::string ext_word_to_string(const Lts& lts, const ExtWord& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += w[i].is_action() ? lts.action_name(w[i].action) : mask_to_string(lts, w[i].set);
  }
  return out;
}

Verdict check_trace_equiv(const Lts& lts, int p, int q) {
  check_process(lts, p);
  check_process(lts, q);
  Explorer ex{lts, LangKind::Trace};
  auto m = ex.run(p, q);
  if (!m) return equivalent_verdict(SemanticsKind::Trace);
  return witness_verdict(SemanticsKind::Trace, m->present_in, TraceWitness{plain_word(m->word)});
}

Verdict check_failures_equiv(const Lts& lts, int p, int q) {
  check_process(lts, p);
  check_process(lts, q);
  Explorer ex{lts, LangKind::Failures};
  auto m = ex.run(p, q);
  if (!m) return equivalent_verdict(SemanticsKind::Failures);
  // A step mismatch means the word itself is a trace of only one side,
  // so the empty refusal distinguishes already.
  ActionMask refusal = m->is_annotation ? m->ann_set : 0;
  return witness_verdict(SemanticsKind::Failures, m->present_in,
                         SetWitness{plain_word(m->word), refusal});
}

Verdict check_ready_equiv(const Lts& lts, int p, int q) {
  check_process(lts, p);
  check_process(lts, q);
  Explorer ex{lts, LangKind::Ready};
  auto m = ex.run(p, q);
  if (!m) return equivalent_verdict(SemanticsKind::Ready);
  ActionMask ready = m->is_annotation ? m->ann_set : lts.enabled(m->reached.front());
  return witness_verdict(SemanticsKind::Ready, m->present_in,
                         SetWitness{plain_word(m->word), ready});
}

Verdict check_failure_trace_equiv(const Lts& lts, int p, int q, const EquivOptions& options) {
  check_process(lts, p);
  check_process(lts, q);
  if (lts.alphabet_size() > options.failure_trace_alphabet_cap)
    throw std::invalid_argument("alphabet exceeds the failure-trace cap of " +
                                std::to_string(options.failure_trace_alphabet_cap));
  if (options.failure_trace_full_powerset && lts.alphabet_size() > 8)
    throw std::invalid_argument("power-set exploration needs an alphabet of at most 8 letters");
  Explorer ex{lts, LangKind::FailureTrace, &options};
  auto m = ex.run(p, q);
  if (!m) return equivalent_verdict(SemanticsKind::FailureTrace);
  return witness_verdict(SemanticsKind::FailureTrace, m->present_in, ExtendedWitness{m->word});
}

Verdict check_ready_trace_equiv(const Lts& lts, int p, int q) {
  check_process(lts, p);
  check_process(lts, q);
  Explorer ex{lts, LangKind::ReadyTrace};
  auto m = ex.run(p, q);
  if (!m) return equivalent_verdict(SemanticsKind::ReadyTrace);
  return witness_verdict(SemanticsKind::ReadyTrace, m->present_in, ExtendedWitness{m->word});
}

Verdict check_possible_futures_equiv(const Lts& lts, int p, int q) {
  check_process(lts, p);
  check_process(lts, q);
  std::vector<int> classes = trace_classes(lts);
  Explorer ex{lts, LangKind::PossibleFutures, nullptr, &classes};
  auto m = ex.run(p, q);
  if (!m) return equivalent_verdict(SemanticsKind::PossibleFutures);
  int cls = m->is_annotation ? m->ann_class : classes[m->reached.front()];
  return witness_verdict(SemanticsKind::PossibleFutures, m->present_in,
                         FutureWitness{plain_word(m->word), class_rep(classes, cls)});
}

Verdict check_simulation_equiv(const Lts& lts, int p, int q) {
  check_process(lts, p);
  check_process(lts, q);
  auto rank = simulation_ranks(lts);
  bool pq = rank[p][q] == kUnremoved;
  bool qp = rank[q][p] == kUnremoved;
  if (pq && qp) return equivalent_verdict(SemanticsKind::Simulation);
  GameNode root;
  if (!pq) {
    root = build_attack(lts, rank, p, q, false);
  } else {
    root = build_attack(lts, rank, q, p, false);
    // The attacker plays inside the second process; flip the side tags.
    std::vector<GameNode*> stack{&root};
    while (!stack.empty()) {
      GameNode* n = stack.back();
      stack.pop_back();
      n->side = 1;
      for (auto& [_, child] : n->replies) stack.push_back(&child);
    }
  }
  return witness_verdict(SemanticsKind::Simulation, pq ? 1 : 0, GameWitness{std::move(root)});
}

Verdict check_bisimulation(const Lts& lts, int p, int q) {
  check_process(lts, p);
  check_process(lts, q);

  // Kanellakis-Smolka style partition refinement.
  const int n = lts.state_count();
  std::vector<int> block(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<int, std::vector<std::vector<int>>>, int> sig_to_block;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::vector<std::vector<int>> sig(lts.alphabet_size());
      for (int a = 0; a < lts.alphabet_size(); ++a) {
        std::set<int> blocks;
        for (int t : lts.successors(s, a)) blocks.insert(block[t]);
        sig[a].assign(blocks.begin(), blocks.end());
      }
      auto key = std::make_pair(block[s], std::move(sig));
      auto [it, fresh] = sig_to_block.emplace(std::move(key), static_cast<int>(sig_to_block.size()));
      next[s] = it->second;
    }
    if (static_cast<int>(sig_to_block.size()) != *std::max_element(block.begin(), block.end()) + 1)
      changed = true;
    block = std::move(next);
  }
  if (n == 0 || block[p] == block[q]) return equivalent_verdict(SemanticsKind::Bisimulation);

  auto rank = bisimulation_ranks(lts);
  assert(rank[p][q] != kUnremoved);
  return witness_verdict(SemanticsKind::Bisimulation, 0,
                         GameWitness{build_attack(lts, rank, p, q, true)});
}

std::map<SemanticsKind, Verdict> check_all(const Lts& lts, int p, int q,
                                           const EquivOptions& options) {
  std::map<SemanticsKind, Verdict> out;
  out.emplace(SemanticsKind::Trace, check_trace_equiv(lts, p, q));
  out.emplace(SemanticsKind::Failures, check_failures_equiv(lts, p, q));
  out.emplace(SemanticsKind::Ready, check_ready_equiv(lts, p, q));
  out.emplace(SemanticsKind::FailureTrace, check_failure_trace_equiv(lts, p, q, options));
  out.emplace(SemanticsKind::ReadyTrace, check_ready_trace_equiv(lts, p, q));
  out.emplace(SemanticsKind::PossibleFutures, check_possible_futures_equiv(lts, p, q));
  out.emplace(SemanticsKind::Simulation, check_simulation_equiv(lts, p, q));
  out.emplace(SemanticsKind::Bisimulation, check_bisimulation(lts, p, q));
  for (const auto& [finer, coarser] : spectrum_edges())
    if (out.at(finer).equivalent && !out.at(coarser).equivalent)
      throw std::logic_error(std::string("spectrum violation: ") + to_string(finer) +
                             " equivalent but " + to_string(coarser) + " not");
  return out;
}

std::vector<int> trace_classes(const Lts& lts) {
  std::vector<int> classes(lts.state_count(), -1);
  std::vector<int> reps;
  for (int s = 0; s < lts.state_count(); ++s) {
    for (int r : reps)
      if (check_trace_equiv(lts, s, r).equivalent) {
        classes[s] = classes[r];
        break;
      }
    if (classes[s] < 0) {
      classes[s] = static_cast<int>(reps.size());
      reps.push_back(s);
    }
  }
  return classes;
}

bool has_trace(const Lts& lts, int p, const Word& word) {
  check_process(lts, p);
  StateSet set{p};
  for (int a : word) {
    if (a < 0 || a >= lts.alphabet_size()) throw std::out_of_range("unknown action in word");
    set = step(lts, set, a);
    if (set.empty()) return false;
  }
  return true;
}

bool has_ready_pair(const Lts& lts, int p, const Word& word, ActionMask ready) {
  check_process(lts, p);
  StateSet set{p};
  for (int a : word) {
    set = step(lts, set, a);
    if (set.empty()) return false;
  }
  for (int s : set)
    if (lts.enabled(s) == ready) return true;
  return false;
}

bool has_failure_pair(const Lts& lts, int p, const Word& word, ActionMask refused) {
  check_process(lts, p);
  StateSet set{p};
  for (int a : word) {
    set = step(lts, set, a);
    if (set.empty()) return false;
  }
  for (int s : set)
    if ((refused & ~lts.maximal_refusal(s)) == 0) return true;
  return false;
}

bool has_extended_word(const Lts& lts, int p, const ExtWord& word, SemanticsKind kind) {
  if (kind != SemanticsKind::FailureTrace && kind != SemanticsKind::ReadyTrace)
    throw std::invalid_argument("extended words exist only for failure/ready traces");
  check_process(lts, p);
  StateSet set{p};
  for (const ExtendedLetter& l : word) {
    if (l.is_action())
      set = step(lts, set, l.action);
    else if (kind == SemanticsKind::FailureTrace)
      set = filter_refusal(lts, set, l.set);
    else
      set = filter_ready(lts, set, l.set);
    if (set.empty()) return false;
  }
  return true;
}

bool replay_witness(const Lts& lts, int p, int q, const Witness& witness) {
  auto exactly_one = [&](bool in_p, bool in_q) {
    if (in_p == in_q) return false;
    return witness.present_in == (in_p ? 0 : 1);
  };
  switch (witness.kind) {
    case SemanticsKind::Trace: {
      const auto& w = std::get<TraceWitness>(witness.data);
      return exactly_one(has_trace(lts, p, w.word), has_trace(lts, q, w.word));
    }
    case SemanticsKind::Failures: {
      const auto& w = std::get<SetWitness>(witness.data);
      return exactly_one(has_failure_pair(lts, p, w.word, w.set),
                         has_failure_pair(lts, q, w.word, w.set));
    }
    case SemanticsKind::Ready: {
      const auto& w = std::get<SetWitness>(witness.data);
      return exactly_one(has_ready_pair(lts, p, w.word, w.set),
                         has_ready_pair(lts, q, w.word, w.set));
    }
    case SemanticsKind::FailureTrace:
    case SemanticsKind::ReadyTrace: {
      const auto& w = std::get<ExtendedWitness>(witness.data);
      return exactly_one(has_extended_word(lts, p, w.word, witness.kind),
                         has_extended_word(lts, q, w.word, witness.kind));
    }
    case SemanticsKind::PossibleFutures: {
      const auto& w = std::get<FutureWitness>(witness.data);
      std::vector<int> classes = trace_classes(lts);
      int cls = classes[w.class_rep];
      auto holds = [&](int root) {
        StateSet set{root};
        for (int a : w.word) set = step(lts, set, a);
        for (int s : set)
          if (classes[s] == cls) return true;
        return false;
      };
      return exactly_one(holds(p), holds(q));
    }
    case SemanticsKind::Simulation:
    case SemanticsKind::Bisimulation: {
      const auto& w = std::get<GameWitness>(witness.data);
      return game_wins(lts, p, q, w.root);
    }
  }
  return false;
}

// ---- oracle ----

namespace {

void enumerate_words(const Lts& lts, int p, int depth,
                     const std::function<void(const Word&, int)>& visit) {
  std::set<std::pair<int, Word>> seen;
  std::deque<std::pair<int, Word>> queue;
  queue.push_back({p, {}});
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto [s, w] = queue.front();
    queue.pop_front();
    visit(w, s);
    if (static_cast<int>(w.size()) == depth) continue;
    for (int a = 0; a < lts.alphabet_size(); ++a)
      for (int t : lts.successors(s, a)) {
        Word next = w;
        next.push_back(a);
        if (seen.insert({t, next}).second) queue.push_back({t, next});
      }
  }
}

std::vector<Word> bounded_traces(const Lts& lts, int s, int depth) {
  std::set<Word> out;
  enumerate_words(lts, s, depth, [&](const Word& w, int) { out.insert(w); });
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<Observation> enumerate_observations(const Lts& lts, int p, SemanticsKind kind,
                                                int depth) {
  check_process(lts, p);
  if (depth < 0 || depth > 12) throw std::invalid_argument("depth must be in 0..12");
  std::set<Observation> out;
  switch (kind) {
    case SemanticsKind::Trace:
      enumerate_words(lts, p, depth, [&](const Word& w, int) { out.insert(w); });
      break;
    case SemanticsKind::Ready:
      enumerate_words(lts, p, depth,
                      [&](const Word& w, int s) { out.insert(PairObs{w, lts.enabled(s)}); });
      break;
    case SemanticsKind::Failures:
      enumerate_words(lts, p, depth, [&](const Word& w, int s) {
        ActionMask max = lts.maximal_refusal(s);
        // all subsets of the maximal refusal
        ActionMask x = 0;
        while (true) {
          out.insert(PairObs{w, x});
          if (x == max) break;
          x = (x - max) & max;  // next subset
        }
      });
      break;
    case SemanticsKind::PossibleFutures:
      enumerate_words(lts, p, depth, [&](const Word& w, int s) {
        out.insert(FutureObs{w, bounded_traces(lts, s, depth)});
      });
      break;
    case SemanticsKind::FailureTrace:
    case SemanticsKind::ReadyTrace: {
      const bool ft = kind == SemanticsKind::FailureTrace;
      auto annotate = [&](int s) {
        return ft ? lts.maximal_refusal(s) : lts.enabled(s);
      };
      // Enumerate fully annotated run signatures X0 a1 X1 ... ak Xk.
      using Signature = std::vector<ActionMask>;  // one set per visited state
      std::set<std::pair<Word, Signature>> sigs;
      std::set<std::tuple<int, Word, Signature>> seen;
      std::deque<std::tuple<int, Word, Signature>> queue;
      queue.push_back({p, {}, {annotate(p)}});
      seen.insert(queue.front());
      while (!queue.empty()) {
        auto [s, w, sig] = queue.front();
        queue.pop_front();
        sigs.insert({w, sig});
        if (static_cast<int>(w.size()) == depth) continue;
        for (int a = 0; a < lts.alphabet_size(); ++a)
          for (int t : lts.successors(s, a)) {
            Word nw = w;
            nw.push_back(a);
            Signature ns = sig;
            ns.push_back(annotate(t));
            if (seen.insert({t, nw, ns}).second) queue.push_back({t, nw, ns});
          }
      }
      // For failure traces drop signatures dominated pointwise by
      // another signature of the same action word; smaller refusals are
      // implied by larger ones.
      for (const auto& [w, sig] : sigs) {
        if (ft) {
          bool dominated = false;
          auto it = sigs.lower_bound({w, {}});
          for (; it != sigs.end() && it->first == w; ++it) {
            const Signature& other = it->second;
            if (other == sig) continue;
            bool all = true;
            for (size_t i = 0; i < sig.size(); ++i)
              if ((sig[i] & ~other[i]) != 0) all = false;
            if (all) {
              dominated = true;
              break;
            }
          }
          if (dominated) continue;
        }
        ExtWord ext;
        ext.push_back(ExtendedLetter::make_set(sig[0]));
        for (size_t i = 0; i < w.size(); ++i) {
          ext.push_back(ExtendedLetter::make_action(w[i]));
          ext.push_back(ExtendedLetter::make_set(sig[i + 1]));
        }
        out.insert(SetTraceObs{std::move(ext)});
      }
      break;
    }
    case SemanticsKind::Simulation:
    case SemanticsKind::Bisimulation:
      throw std::invalid_argument("no observation enumeration for game semantics");
  }
  return {out.begin(), out.end()};
}

}  // namespace fairlts
