#ifndef COCALC_SRC_COTERM_IMPL_HPP
#define COCALC_SRC_COTERM_IMPL_HPP

#include <mutex>

#include "cocalc/coterm.hpp"

namespace cocalc::detail {

// Shared memo cell behind a CoTerm handle. Immutable except for the
// write-once memo; forcing is idempotent under concurrency (call_once).
struct CoTermImpl {
  SignaturePtr sig;
  Context ctx;
  Sort sort;

  mutable std::once_flag once;
  mutable std::optional<Node> memo;
  mutable std::function<Node()> step;  // released after a successful force

  std::shared_ptr<const SolveOrigin> origin;  // set on solve() roots

  CoTermImpl(SignaturePtr s, Context c, Sort so)
      : sig(std::move(s)), ctx(std::move(c)), sort(std::move(so)) {}

  const Node& force() const {
    std::call_once(once, [&] {
      if (!memo) {
        memo = step();
        step = nullptr;
      }
    });
    return *memo;
  }
};

struct CoTermAccess {
  static CoTerm make(std::shared_ptr<CoTermImpl> impl) {
    return CoTerm(std::move(impl));
  }
  static const std::shared_ptr<CoTermImpl>& impl(const CoTerm& t) {
    return t.impl_;
  }

  // Eager node (memo prefilled; no force-time work).
  static CoTerm eager(SignaturePtr sig, Context ctx, Sort sort, Node node) {
    auto impl = std::make_shared<CoTermImpl>(std::move(sig), std::move(ctx),
                                             std::move(sort));
    impl->memo = std::move(node);
    return CoTerm(std::move(impl));
  }

  // Lazy node; step runs at most once.
  static CoTerm lazy(SignaturePtr sig, Context ctx, Sort sort,
                     std::function<Node()> step) {
    auto impl = std::make_shared<CoTermImpl>(std::move(sig), std::move(ctx),
                                             std::move(sort));
    impl->step = std::move(step);
    return CoTerm(std::move(impl));
  }
};

}  // namespace cocalc::detail

#endif
