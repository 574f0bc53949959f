#include "qd/parallel.hpp"

#include <cstdlib>
#include <omp.h>
#include <string>

namespace qd::par {

namespace {
    int resolve_from_env()
    {
        const char* env = std::getenv("QD_THREADS");
        if (env == nullptr || *env == '\0')
            return omp_get_max_threads();
        int n = std::atoi(env);
        return n <= 0 ? 1 : n;
    }

    int g_threads = -1;
} // namespace

int thread_count()
{
    if (g_threads < 0)
        g_threads = resolve_from_env();
    return g_threads;
}

void set_thread_count(int n)
{
    g_threads = n <= 0 ? 1 : n;
}

namespace detail {

    void run_indexed(std::int64_t n, int threads, void (*body)(std::int64_t, void*), void* ctx)
    {
        if (threads <= 1 || n < 2) {
            // Serial reference path.
            for (std::int64_t i = 0; i < n; ++i)
                body(i, ctx);
            return;
        }
#pragma omp parallel for schedule(static) num_threads(threads)
        for (std::int64_t i = 0; i < n; ++i)
            body(i, ctx);
    }

} // namespace detail

} // namespace qd::par
