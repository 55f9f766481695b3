#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace windvar {

/// Number of OpenMP threads to use for a kernel; `requested` <= 0 means
/// all available. Every parallel kernel in this library writes results
/// into preassigned slots, so outputs are identical for any job count.
inline int resolve_jobs(int requested) {
#ifdef _OPENMP
    if (requested <= 0) return omp_get_max_threads();
    return requested;
#else
    (void)requested;
    return 1;
#endif
}

}  // namespace windvar
