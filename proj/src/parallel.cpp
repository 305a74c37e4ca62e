#include "evosplit/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evosplit {

namespace {

std::atomic<int> g_threads{-1};  // -1 = not configured yet

int from_env() {
  const char* env = std::getenv("EVOSPLIT_THREADS");
  if (env == nullptr) return 0;
  const int value = std::atoi(env);
  return value > 0 ? value : 0;
}

}  // namespace

void set_thread_count(int threads) { g_threads.store(threads > 0 ? threads : 0); }

int thread_count() {
  int value = g_threads.load();
  if (value < 0) {
    value = from_env();
    g_threads.store(value);
  }
  return value;
}

int effective_threads() {
  const int cap = thread_count();
#ifdef _OPENMP
  return cap > 0 ? cap : omp_get_max_threads();
#else
  (void)cap;
  return 1;
#endif
}

}  // namespace evosplit
