#ifndef EVOSPLIT_PARALLEL_HPP
#define EVOSPLIT_PARALLEL_HPP

namespace evosplit {

/// Caps the OpenMP team size for all parallel kernels. 0 means "use the
/// OpenMP default". Thread count never changes computed values: kernels
/// write independent slots and reduce in fixed index order.
void set_thread_count(int threads);

/// Currently configured cap (0 = default), honoring EVOSPLIT_THREADS on
/// first use when set_thread_count was never called.
int thread_count();

/// Team size actually used by kernels.
int effective_threads();

}  // namespace evosplit

#endif
