#include "geraf/threads.hpp"

#include <algorithm>
#include <cstdlib>

#include <omp.h>

namespace geraf {

int effective_threads() {
    int threads = omp_get_max_threads();
    if (const char* env = std::getenv("GERAF_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1)
            threads = std::min(threads, cap);
    }
    return std::max(1, threads);
}

} // namespace geraf
