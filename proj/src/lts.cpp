#include "fairlts/lts.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fairlts {

namespace {

bool valid_label_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (c == '"' || c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
  }
  return true;
}

}  // namespace

Lts::Lts(int state_count, std::vector<std::string> alphabet,
         std::vector<Transition> transitions)
    : state_count_(state_count),
      alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)) {
  if (state_count_ < 0) throw std::invalid_argument("negative state count");
  if (alphabet_.size() > static_cast<size_t>(max_alphabet))
    throw std::invalid_argument("alphabet exceeds " + std::to_string(max_alphabet) + " letters");
  for (size_t i = 0; i < alphabet_.size(); ++i) {
    if (!valid_label_name(alphabet_[i]))
      throw std::invalid_argument("invalid action name: '" + alphabet_[i] + "'");
    if (i > 0 && !(alphabet_[i - 1] < alphabet_[i]))
      throw std::invalid_argument("alphabet not sorted or not unique");
  }
  std::sort(transitions_.begin(), transitions_.end());
  for (size_t i = 0; i < transitions_.size(); ++i) {
    const Transition& t = transitions_[i];
    if (t.src < 0 || t.src >= state_count_ || t.dst < 0 || t.dst >= state_count_)
      throw std::invalid_argument("transition state out of range");
    if (t.label < 0 || t.label >= alphabet_size())
      throw std::invalid_argument("transition label out of range");
    if (i > 0 && transitions_[i - 1] == t)
      throw std::invalid_argument("duplicate transition");
  }

  enabled_.assign(state_count_, 0);
  succ_.assign(static_cast<size_t>(state_count_) * alphabet_.size(), {});
  for (const Transition& t : transitions_) {
    enabled_[t.src] |= ActionMask{1} << t.label;
    succ_[static_cast<size_t>(t.src) * alphabet_.size() + t.label].push_back(t.dst);
  }
}

void Lts::check_state(int state) const {
  if (state < 0 || state >= state_count_)
    throw std::out_of_range("state index " + std::to_string(state) + " out of range");
}

const std::string& Lts::action_name(int action) const {
  if (action < 0 || action >= alphabet_size())
    throw std::out_of_range("action index out of range");
  return alphabet_[action];
}

std::optional<int> Lts::action_index(std::string_view name) const noexcept {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - alphabet_.begin());
}

ActionMask Lts::full_mask() const noexcept {
  if (alphabet_.empty()) return 0;
  if (alphabet_.size() == 64) return ~ActionMask{0};
  return (ActionMask{1} << alphabet_.size()) - 1;
}

ActionMask Lts::enabled(int state) const {
  check_state(state);
  return enabled_[state];
}

ActionMask Lts::maximal_refusal(int state) const {
  check_state(state);
  return full_mask() & ~enabled_[state];
}

const std::vector<int>& Lts::successors(int state, int action) const {
  check_state(state);
  if (action < 0 || action >= alphabet_size())
    throw std::out_of_range("unknown action index " + std::to_string(action));
  return succ_[static_cast<size_t>(state) * alphabet_.size() + action];
}

std::vector<int> mask_actions(ActionMask m) {
  std::vector<int> out;
  for (int a = 0; a < Lts::max_alphabet; ++a)
    if (mask_contains(m, a)) out.push_back(a);
  return out;
}

std::string mask_to_string(const Lts& lts, ActionMask m) {
  std::string out = "{";
  bool first = true;
  for (int a : mask_actions(m)) {
    if (!first) out += ",";
    out += lts.action_name(a);
    first = false;
  }
  return out + "}";
}

std::string word_to_string(const Lts& lts, const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += lts.action_name(w[i]);
  }
  return out;
}

bool validate_run(const Lts& lts, const FiniteRun& run) noexcept {
  if (run.states.empty()) return false;
  if (run.labels.size() + 1 != run.states.size()) return false;
  for (int s : run.states)
    if (s < 0 || s >= lts.state_count()) return false;
  for (size_t i = 0; i < run.labels.size(); ++i) {
    int a = run.labels[i];
    if (a < 0 || a >= lts.alphabet_size()) return false;
    const auto& succ = lts.successors(run.states[i], a);
    if (!std::binary_search(succ.begin(), succ.end(), run.states[i + 1])) return false;
  }
  return true;
}

bool same_omega_word(const Lasso& a, const Lasso& b) {
  if (a.cycle.empty() || b.cycle.empty()) return false;
  auto at = [](const Lasso& l, size_t i) -> int {
    if (i < l.stem.size()) return l.stem[i];
    return l.cycle[(i - l.stem.size()) % l.cycle.size()];
  };
  size_t lcm = a.cycle.size() / std::gcd(a.cycle.size(), b.cycle.size()) * b.cycle.size();
  size_t bound = std::max(a.stem.size(), b.stem.size()) + lcm;
  for (size_t i = 0; i < bound; ++i)
    if (at(a, i) != at(b, i)) return false;
  return true;
}

std::string lasso_to_string(const Lts& lts, const Lasso& l) {
  std::string out = word_to_string(lts, l.stem);
  out += "(" + word_to_string(lts, l.cycle) + ")^w";
  return out;
}

bool validate_run_lasso(const Lts& lts, const RunLasso& rl) noexcept {
  if (!validate_run(lts, rl.stem_run) || !validate_run(lts, rl.cycle_run)) return false;
  if (rl.cycle_run.labels.empty()) return false;
  if (rl.stem_run.states.back() != rl.cycle_run.states.front()) return false;
  if (rl.cycle_run.states.back() != rl.cycle_run.states.front()) return false;
  return true;
}

ComposedLts parallel_compose(const Lts& left, const Lts& right,
                             const std::optional<std::vector<std::string>>& sync) {
  std::vector<std::string> union_alphabet;
  std::merge(left.alphabet().begin(), left.alphabet().end(),
             right.alphabet().begin(), right.alphabet().end(),
             std::back_inserter(union_alphabet));
  union_alphabet.erase(std::unique(union_alphabet.begin(), union_alphabet.end()),
                       union_alphabet.end());

  std::set<std::string> sync_names;
  if (sync.has_value()) {
    for (const std::string& name : *sync) {
      if (!left.action_index(name) && !right.action_index(name))
        throw std::invalid_argument("sync action '" + name + "' is in neither alphabet");
      sync_names.insert(name);
    }
  } else {
    for (const std::string& name : left.alphabet())
      if (right.action_index(name)) sync_names.insert(name);
  }

  const int rs = right.state_count();
  auto idx = [rs](int l, int r) { return l * rs + r; };

  std::set<Transition> out;
  for (int a = 0; a < static_cast<int>(union_alphabet.size()); ++a) {
    const std::string& name = union_alphabet[a];
    auto la = left.action_index(name);
    auto ra = right.action_index(name);
    if (sync_names.count(name)) {
      if (!la || !ra) continue;  // one side cannot move, no joint step
      for (int l = 0; l < left.state_count(); ++l)
        for (int lt : left.successors(l, *la))
          for (int r = 0; r < rs; ++r)
            for (int rt : right.successors(r, *ra))
              out.insert({idx(l, r), a, idx(lt, rt)});
    } else {
      if (la) {
        for (int l = 0; l < left.state_count(); ++l)
          for (int lt : left.successors(l, *la))
            for (int r = 0; r < rs; ++r) out.insert({idx(l, r), a, idx(lt, r)});
      }
      if (ra) {
        for (int r = 0; r < rs; ++r)
          for (int rt : right.successors(r, *ra))
            for (int l = 0; l < left.state_count(); ++l) out.insert({idx(l, r), a, idx(l, rt)});
      }
    }
  }

  ComposedLts result;
  result.left_states = left.state_count();
  result.right_states = rs;
  result.lts = Lts(left.state_count() * rs, union_alphabet,
                   std::vector<Transition>(out.begin(), out.end()));
  return result;
}

UnionLts disjoint_union(const Lts& a, const Lts& b) {
  std::vector<std::string> union_alphabet;
  std::merge(a.alphabet().begin(), a.alphabet().end(),
             b.alphabet().begin(), b.alphabet().end(),
             std::back_inserter(union_alphabet));
  union_alphabet.erase(std::unique(union_alphabet.begin(), union_alphabet.end()),
                       union_alphabet.end());
  Lts tmp(0, union_alphabet, {});

  std::vector<Transition> ts;
  for (const Transition& t : a.transitions())
    ts.push_back({t.src, *tmp.action_index(a.action_name(t.label)), t.dst});
  const int offset = a.state_count();
  for (const Transition& t : b.transitions())
    ts.push_back({t.src + offset, *tmp.action_index(b.action_name(t.label)), t.dst + offset});

  UnionLts u;
  u.right_offset = offset;
  u.lts = Lts(a.state_count() + b.state_count(), union_alphabet, std::move(ts));
  return u;
}

std::pair<Lts, int> restrict_to_reachable(const Lts& lts, int root,
                                          std::vector<int>* old_to_new) {
  if (root < 0 || root >= lts.state_count())
    throw std::out_of_range("root state out of range");
  std::vector<int> map(lts.state_count(), -1);
  std::vector<int> order;
  map[root] = 0;
  order.push_back(root);
  for (size_t head = 0; head < order.size(); ++head) {
    int s = order[head];
    for (int a = 0; a < lts.alphabet_size(); ++a)
      for (int t : lts.successors(s, a))
        if (map[t] < 0) {
          map[t] = static_cast<int>(order.size());
          order.push_back(t);
        }
  }
  std::vector<Transition> ts;
  for (const Transition& t : lts.transitions())
    if (map[t.src] >= 0 && map[t.dst] >= 0) ts.push_back({map[t.src], t.label, map[t.dst]});
  if (old_to_new) *old_to_new = map;
  return {Lts(static_cast<int>(order.size()), lts.alphabet(), std::move(ts)), 0};
}

}  // namespace fairlts
