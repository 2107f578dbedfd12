#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace kdist {

/// Worker count used by the data-parallel kernels (default: hardware concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for every i in [0, n), split into contiguous chunks over the
/// worker threads. body must only write to state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// out[i] = f(i), evaluated in parallel. Results do not depend on thread count.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

/// Pairwise (cascade) summation; fixed association order for a given length.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = data[0];
    for (std::size_t i = 1; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace kdist
