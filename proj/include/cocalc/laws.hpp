#ifndef COCALC_LAWS_HPP
#define COCALC_LAWS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cocalc/subst.hpp"

namespace cocalc {

/// Test seams. When lift_impl is set, the law runner routes its binds
/// through a local substitution engine using that lift, so a broken lift
/// surfaces as law failures (mutation testing).
struct LawHooks {
  std::function<Substitution(const Substitution&, const std::vector<Sort>&)>
      lift_impl;
};

struct LawLine {
  std::string law;
  int trials = 0;
  int failures = 0;
  /// Lexicographically smallest serialized failing case, empty when none.
  std::string counterexample;
};

struct LawReport {
  std::vector<LawLine> lines;
  bool ok() const;
  /// `LAW <name> trials=<n> failures=<k>` per line, then one `CEX` line
  /// per failing law.
  std::string str() const;
};

/// Randomized check of the substitution monad laws up to depth-bounded
/// bisimilarity: right unit, left unit on variables, associativity.
/// Reproducible for a fixed seed. Failures are report data.
LawReport check_monad_laws(const SignaturePtr& sig, std::uint64_t seed,
                           int trials, std::size_t depth,
                           const LawHooks* hooks = nullptr);

}  // namespace cocalc

#endif
