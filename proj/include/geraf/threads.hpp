#pragma once

namespace geraf {

/// Number of threads parallel kernels may use: the OpenMP maximum, capped
/// by the GERAF_THREADS environment variable when set. Always >= 1.
int effective_threads();

/// Resolves a user-supplied thread count: values < 1 mean "use the default".
inline int resolve_threads(int requested) {
    return requested >= 1 ? requested : effective_threads();
}

} // namespace geraf
