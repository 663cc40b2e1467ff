// Minimal index-based parallel map. Each index writes only its own slot, so
// results are independent of the worker count.
#ifndef SPS_PARALLEL_HPP
#define SPS_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sps {

// Worker count: explicit setting, else SPS_WORKERS env var, else hardware.
int worker_count();
void set_worker_count(int n);

// fn(i) for i in [0, n), distributed over workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sps

#endif
