#ifndef QFL_PARALLEL_HPP
#define QFL_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>

namespace qfl {

// Serial is the reference path kept for testing; Parallel must produce
// bitwise identical results because every kernel writes by index and
// reduces in a fixed order.
enum class Execution { Serial, Parallel };

// Worker count from QFL_WORKERS; all available hardware threads if unset.
int worker_count();

namespace detail {
void parallel_for_impl(std::size_t n, void (*body)(std::size_t, void*), void* ctx);
}

// Runs body(i) for i in [0, n). The first exception thrown by any
// iteration is rethrown on the calling thread after the loop finishes.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  struct Ctx {
    Body* body;
    std::exception_ptr error;
    std::mutex mutex;
  } ctx{&body, nullptr, {}};
  detail::parallel_for_impl(
      n,
      [](std::size_t i, void* p) {
        auto* c = static_cast<Ctx*>(p);
        try {
          (*c->body)(i);
        } catch (...) {
          std::lock_guard lock(c->mutex);
          if (!c->error) c->error = std::current_exception();
        }
      },
      &ctx);
  if (ctx.error) std::rethrow_exception(ctx.error);
}

}  // namespace qfl

#endif
