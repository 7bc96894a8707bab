#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldforge/laver_table.hpp"
#include "ldforge/term.hpp"

namespace ldforge {

/// Highest level a thread can be realized at (the largest supported table).
inline constexpr unsigned kMaxThreadLevel = 16;

/// A member of the inverse limit of the tables A_0 <- A_1 <- A_2 <- ...,
/// realized one level at a time. Levels are memoized; copies share the memo.
class Thread {
 public:
  using LevelFn = std::function<Element(unsigned level)>;

  explicit Thread(LevelFn fn);

  /// Value in A_level. Throws std::out_of_range above kMaxThreadLevel.
  Element at(unsigned level) const;
  /// Highest level computed so far.
  unsigned max_realized() const;
  /// project(n, m, at(n)) == at(m) for all m <= n <= level.
  bool coherent_up_to(unsigned level) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// The thread that is 0 at every level.
Thread zero_thread();

/// Level n is the fold t_s o t_{s+1} o ... o t_{n-1} over the right-power chain
/// of A_n, grouped from the left. Factors past the chain's first 0 are neutral,
/// and the empty fold is 0.
Thread shifted_thread(unsigned s);
/// shifted_thread(0).
Thread canonical_u_thread();
/// shifted_thread(1).
Thread canonical_v_thread();

Thread thread_apply(const Thread& a, const Thread& b);
Thread thread_compose(const Thread& a, const Thread& b);

/// Value of a 2-generator word at `level` with x -> u and y -> v.
Element eval_word_in_threads(const Term& w, unsigned level);

/// Least level n in 1..max_level where the words evaluate differently.
/// nullopt means "not separated up to max_level", never an equality claim.
std::optional<unsigned> separating_level(const Term& w1, const Term& w2, unsigned max_level);

struct SweepPair {
  Term w1;
  Term w2;
  std::optional<unsigned> level;
  bool oracle_inequivalent = false;  ///< the closure oracle proved the classes distinct
};

struct SweepReport {
  std::size_t size_bound = 0;
  unsigned max_level = 0;
  std::size_t closure_bound = 0;
  std::size_t term_count = 0;
  std::size_t class_count = 0;
  std::size_t cross_pairs = 0;
  std::size_t separated = 0;
  std::size_t unresolved = 0;
  /// Words in the same LD-class that evaluate differently somewhere. Must be 0.
  std::size_t false_separations = 0;
  unsigned max_separating_level = 0;
  std::vector<std::vector<Term>> classes;
  /// One entry per cross-class pair of class representatives.
  std::vector<SweepPair> pairs;
};

/// Groups all 2-generator A-terms of size <= size_bound into LD-classes with the
/// bidirectional closure oracle (intermediate terms up to closure_bound leaves,
/// default size_bound + 3), then looks for a separating level for every pair
/// of classes.
SweepReport freeness_sweep(std::size_t size_bound, unsigned max_level,
                           std::optional<std::size_t> closure_bound = std::nullopt);

/// "w1,w2,verdict,separating_level,budget" with verdict separated | unresolved.
std::string sweep_csv(const SweepReport& report);

}  // namespace ldforge
