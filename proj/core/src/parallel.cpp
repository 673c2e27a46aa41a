#include "chainlab/parallel.hpp"

#include <algorithm>

namespace chainlab {

namespace {
std::atomic<unsigned> g_cap{0};
}

void set_worker_cap(unsigned workers) { g_cap.store(workers); }

unsigned worker_cap() {
  const unsigned cap = g_cap.load();
  if (cap != 0) return cap;
  return std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
}

}  // namespace chainlab
