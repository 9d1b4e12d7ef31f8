#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fairlts/lts.hpp"

namespace fairlts {

/// The eight semantics, one per checker.
enum class SemanticsKind {
  Trace,
  Failures,
  Ready,
  FailureTrace,
  ReadyTrace,
  PossibleFutures,
  Simulation,
  Bisimulation,
};

const char* to_string(SemanticsKind kind);
std::optional<SemanticsKind> semantics_from_string(std::string_view name);
std::vector<SemanticsKind> all_semantics();

/// Strict implication edges of the spectrum, finer -> coarser:
/// B->RT, B->PF, B->S, PF->R, RT->R, RT->FT, R->F, FT->F, F->T, S->T.
const std::vector<std::pair<SemanticsKind, SemanticsKind>>& spectrum_edges();

/// Transitive closure of spectrum_edges (reflexive).
bool spectrum_implies(SemanticsKind finer, SemanticsKind coarser);

/// A letter of an extended word: either an action or a set of actions.
/// In failure-trace words a set letter is a refusal test (it must fit
/// inside the maximal refusal of the current state); in ready-trace
/// words it must equal the ready set exactly.
struct ExtendedLetter {
  int action = -1;     // valid when >= 0
  ActionMask set = 0;  // valid when action < 0

  bool is_action() const noexcept { return action >= 0; }
  static ExtendedLetter make_action(int a) { return {a, 0}; }
  static ExtendedLetter make_set(ActionMask m) { return {-1, m}; }
  friend auto operator<=>(const ExtendedLetter&, const ExtendedLetter&) = default;
};
using ExtWord = std::vector<ExtendedLetter>;

std::string ext_word_to_string(const Lts& lts, const ExtWord& w);

struct TraceWitness {
  Word word;
};
struct SetWitness {  // a ready pair or a failure pair, depending on kind
  Word word;
  ActionMask set = 0;
};
struct ExtendedWitness {
  ExtWord word;
};
struct FutureWitness {  // a possible future: trace plus trace-language class
  Word word;
  int class_rep = 0;  // smallest state index whose finite-trace language is the class
};

/// One node of an attacker strategy for the (bi)simulation game. The
/// attacker moves `action` to `target` in the process given by `side`
/// (0 = first argument, 1 = second); `replies` holds one subtree per
/// defender answer, keyed by the defender's target state. A node with
/// an action the defender cannot match needs no replies.
struct GameNode {
  int side = 0;
  int action = 0;
  int target = 0;
  std::vector<std::pair<int, GameNode>> replies;
};
struct GameWitness {
  GameNode root;
};

/// Distinguishing observation present in exactly one of the two
/// processes (present_in 0/1); for (bi)simulation a winning attacker
/// strategy instead.
struct Witness {
  SemanticsKind kind = SemanticsKind::Trace;
  int present_in = 0;
  std::variant<TraceWitness, SetWitness, ExtendedWitness, FutureWitness, GameWitness> data;
};

struct Verdict {
  SemanticsKind kind = SemanticsKind::Trace;
  bool equivalent = false;
  std::optional<Witness> witness;  // absent iff equivalent
};

struct EquivOptions {
  /// check_failure_trace_equiv refuses alphabets beyond this size.
  int failure_trace_alphabet_cap = 16;
  /// When set, failure-trace refusal letters range over the full power
  /// set of the alphabet instead of the intersection closure of the
  /// maximal refusals in play (alphabet must be <= 8). The two modes
  /// decide the same relation; the power-set mode exists as a
  /// cross-check.
  bool failure_trace_full_powerset = false;
};

// Each checker decides the infinitary equivalence of its kind. For
// finitely branching systems an infinite (plain or extended) word is a
// trace exactly when all of its finite prefixes are, so equality of the
// finite observation sets settles the infinite ones too; everything
// below therefore runs on classical finite constructions. Witnesses are
// shortest first, ties broken lexicographically (actions in alphabet
// order before set letters in mask order).

Verdict check_trace_equiv(const Lts& lts, int p, int q);
Verdict check_failures_equiv(const Lts& lts, int p, int q);
Verdict check_ready_equiv(const Lts& lts, int p, int q);
Verdict check_failure_trace_equiv(const Lts& lts, int p, int q,
                                  const EquivOptions& options = {});
Verdict check_ready_trace_equiv(const Lts& lts, int p, int q);
Verdict check_possible_futures_equiv(const Lts& lts, int p, int q);
Verdict check_simulation_equiv(const Lts& lts, int p, int q);
Verdict check_bisimulation(const Lts& lts, int p, int q);

/// Runs all eight checks and verifies that the verdicts respect every
/// spectrum edge; a violation throws std::logic_error since it can only
/// mean a checker bug.
std::map<SemanticsKind, Verdict> check_all(const Lts& lts, int p, int q,
                                           const EquivOptions& options = {});

/// Partitions all states into finite-trace-language classes. Returns
/// one class id per state; ids are dense and ordered by the smallest
/// state index in the class.
std::vector<int> trace_classes(const Lts& lts);

// ---- observation membership (used for witness replay and by tests) ----

bool has_trace(const Lts& lts, int p, const Word& word);
bool has_ready_pair(const Lts& lts, int p, const Word& word, ActionMask ready);
bool has_failure_pair(const Lts& lts, int p, const Word& word, ActionMask refused);
/// `kind` must be FailureTrace or ReadyTrace.
bool has_extended_word(const Lts& lts, int p, const ExtWord& word, SemanticsKind kind);

/// True iff the witness is valid for (p, q): its observation belongs to
/// exactly the process it names, or, for game witnesses, the strategy
/// wins the corresponding (bi)simulation game.
bool replay_witness(const Lts& lts, int p, int q, const Witness& witness);

// ---- brute-force oracle ----

/// One bounded-depth observation. Failure traces are reported in
/// maximal form: refusal letters carry the full maximal refusal of the
/// state they test, every position is annotated, and refusal tuples
/// dominated by another run of the same action word are omitted (all
/// other failure traces arise from these by shrinking letters, so the
/// maximal form determines the whole set). Ready traces carry the ready
/// set at every position. Consecutive set letters never appear.
struct SetTraceObs {
  ExtWord word;
  friend auto operator<=>(const SetTraceObs&, const SetTraceObs&) = default;
};
struct PairObs {
  Word word;
  ActionMask set = 0;
  friend auto operator<=>(const PairObs&, const PairObs&) = default;
};
struct FutureObs {
  Word word;
  std::vector<Word> futures;  // traces of the reached state, up to the depth
  friend auto operator<=>(const FutureObs&, const FutureObs&) = default;
};
using Observation = std::variant<Word, PairObs, SetTraceObs, FutureObs>;

/// All observations of the kind with at most `depth` actions, by naive
/// run enumeration. Supports every kind except Simulation/Bisimulation.
std::vector<Observation> enumerate_observations(const Lts& lts, int p, SemanticsKind kind,
                                                int depth);

}  // namespace fairlts
