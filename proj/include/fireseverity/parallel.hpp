#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fireseverity {

// Thread budget for parallel kernels. FIRESEVERITY_THREADS caps the OpenMP
// team size; 0 or unset means the OpenMP default. Resolved once per process.
int thread_count();

// True when compiled with OpenMP support.
bool parallel_enabled();

} // namespace fireseverity
