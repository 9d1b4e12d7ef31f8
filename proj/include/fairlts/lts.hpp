#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairlts {

/// Actions are interned: an action is an index into the alphabet of its
/// Lts, and an action set is a bit mask over those indices.
using ActionMask = std::uint64_t;

/// A finite word over an interned alphabet.
using Word = std::vector<int>;

struct Transition {
  int src = 0;
  int label = 0;
  int dst = 0;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite labeled transition system over an interned alphabet.
///
/// States are dense indices 0..state_count()-1; a process is an Lts
/// together with one of its states. The alphabet may contain letters not
/// used by any transition; such letters still matter because refusal sets
/// are complements relative to the full alphabet. All instances are
/// immutable after construction and safe to share across threads.
class Lts {
 public:
  static constexpr int max_alphabet = 64;  // action sets are 64-bit masks

  Lts() = default;

  /// Validates and normalizes: alphabet must be sorted, unique, with
  /// label names that are non-empty and free of whitespace and quotes;
  /// transitions must be in range and duplicate-free (any order accepted).
  Lts(int state_count, std::vector<std::string> alphabet,
      std::vector<Transition> transitions);

  int state_count() const noexcept { return state_count_; }
  int alphabet_size() const noexcept { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::string& action_name(int action) const;
  std::optional<int> action_index(std::string_view name) const noexcept;

  /// Transitions sorted by (src, label, dst), duplicate-free.
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  /// Mask over all alphabet letters.
  ActionMask full_mask() const noexcept;

  /// Set of actions with an outgoing transition at `state` (the ready set).
  ActionMask enabled(int state) const;

  /// Complement of enabled() relative to the alphabet: the largest
  /// refusal set of `state`.
  ActionMask maximal_refusal(int state) const;

  /// Targets of `state` under `action`, sorted ascending.
  const std::vector<int>& successors(int state, int action) const;

 private:
  void check_state(int state) const;

  int state_count_ = 0;
  std::vector<std::string> alphabet_;
  std::vector<Transition> transitions_;
  std::vector<ActionMask> enabled_;              // per state
  std::vector<std::vector<int>> succ_;           // [state * |Sigma| + action]
};

inline bool mask_contains(ActionMask m, int action) noexcept {
  return (m >> action) & 1u;
}

/// Actions of a mask in ascending order.
std::vector<int> mask_actions(ActionMask m);

/// Renders a mask as "{a,b}" using the Lts alphabet.
std::string mask_to_string(const Lts& lts, ActionMask m);

/// Renders a word as space-separated labels ("" for the empty word).
std::string word_to_string(const Lts& lts, const Word& w);

/// A path through an Lts: |labels| = |states| - 1. The empty path at a
/// state is states = {s}, labels = {}.
struct FiniteRun {
  std::vector<int> states;
  Word labels;
  friend auto operator<=>(const FiniteRun&, const FiniteRun&) = default;
};

/// True iff every consecutive (state, label, state) triple is a
/// transition. Length-inconsistent or empty input yields false.
bool validate_run(const Lts& lts, const FiniteRun& run) noexcept;

/// Ultimately periodic word stem.cycle^w. Two lassos denoting the same
/// infinite word are distinct objects; every membership-style query in
/// this library gives representation-independent answers.
struct Lasso {
  Word stem;
  Word cycle;  // non-empty
  friend auto operator<=>(const Lasso&, const Lasso&) = default;
};

/// True iff both lassos denote the same infinite word.
bool same_omega_word(const Lasso& a, const Lasso& b);

/// Renders "u(v)^w" with labels space-separated inside each part.
std::string lasso_to_string(const Lts& lts, const Lasso& l);

/// Finite witness for an infinite run: stem_run ends where cycle_run
/// starts, and cycle_run is a closed loop.
struct RunLasso {
  FiniteRun stem_run;
  FiniteRun cycle_run;

  Lasso trace() const { return Lasso{stem_run.labels, cycle_run.labels}; }
};

/// True iff both component runs validate, the stem ends at the cycle
/// head and the cycle closes with at least one step.
bool validate_run_lasso(const Lts& lts, const RunLasso& rl) noexcept;

/// Synchronous product of two systems. State pairs are enumerated
/// row-major: (l, r) has index l * right_states + r.
struct ComposedLts {
  Lts lts;
  int left_states = 0;
  int right_states = 0;

  int pair_index(int left, int right) const { return left * right_states + right; }
};

/// Builds the full product over all state pairs. Actions in `sync` move
/// both components together; any other action moves the components that
/// own it independently (interleaving). When `sync` is absent it
/// defaults to the intersection of the two alphabets. The result
/// alphabet is the union. Throws std::invalid_argument when `sync`
/// names an action in neither alphabet.
ComposedLts parallel_compose(const Lts& left, const Lts& right,
                             const std::optional<std::vector<std::string>>& sync = std::nullopt);

/// Disjoint union over the union alphabet. Right-hand states are
/// shifted by `right_offset`.
struct UnionLts {
  Lts lts;
  int right_offset = 0;
};
UnionLts disjoint_union(const Lts& a, const Lts& b);

/// Restriction to the states reachable from `root`. `old_to_new`, when
/// given, receives -1 for dropped states. Returns the restricted system
/// and the new index of `root`.
std::pair<Lts, int> restrict_to_reachable(const Lts& lts, int root,
                                          std::vector<int>* old_to_new = nullptr);

}  // namespace fairlts
