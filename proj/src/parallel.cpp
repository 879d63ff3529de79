#include "factoria/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <omp.h>

namespace factoria {

namespace {
std::atomic<int> g_cap{-1};
}

int thread_cap() {
  int c = g_cap.load();
  if (c < 0) {
    c = 0;
    if (const char* env = std::getenv("FACTORIA_THREADS")) c = std::atoi(env);
    if (c < 0) c = 0;
    g_cap.store(c);
  }
  return c > 0 ? c : omp_get_max_threads();
}

void set_thread_cap(int n) { g_cap.store(n < 0 ? 0 : n); }

}  // namespace factoria
