#include "fireseverity/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fireseverity {

namespace {

int resolve_thread_count() {
#ifdef _OPENMP
    const char* env = std::getenv("FIRESEVERITY_THREADS");
    if (env != nullptr) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) {
            return static_cast<int>(n);
        }
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace

int thread_count() {
    static const int n = resolve_thread_count();
    return n;
}

bool parallel_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

} // namespace fireseverity
