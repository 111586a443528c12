// Deterministic work sharing.  Jobs are indexed; every result lands in the
// slot owned by its index, so the assembled output is a pure function of the
// inputs and never of the worker count or scheduling order.  The first
// exception in index order is rethrown after all workers join.
#ifndef DOPKIT_POOL_HPP
#define DOPKIT_POOL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace dopkit {

// Process-wide worker count, set once at startup (CLI flag) before any
// computation begins.  Defaults to a single worker.
inline int& pool_workers() {
  static int workers = 1;
  return workers;
}

template <class Fn>
void parallel_for(int n, const Fn& f) {
  if (n <= 0) return;
  int nt = pool_workers();
  if (nt > n) nt = n;
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(static_cast<size_t>(n));
  auto run = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        errs[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> ts;
  ts.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) ts.emplace_back(run);
  for (auto& t : ts) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

template <class T, class Fn>
std::vector<T> parallel_map(int n, const Fn& g) {
  std::vector<std::optional<T>> slots(static_cast<size_t>(n > 0 ? n : 0));
  parallel_for(n, [&](int i) { slots[static_cast<size_t>(i)].emplace(g(i)); });
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace dopkit

#endif
