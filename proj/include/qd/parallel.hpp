#ifndef QD_PARALLEL_HPP
#define QD_PARALLEL_HPP

#include <cstddef>
#include <cstdint>

namespace qd::par {

/// Worker count for data-parallel kernels. Resolved once from QD_THREADS:
/// unset -> hardware threads, 0 -> 1 (serial reference mode), n -> n.
int thread_count();

/// Test/bench override; call before any kernel runs in the new mode.
void set_thread_count(int n);

namespace detail {
    void run_indexed(std::int64_t n, int threads, void (*body)(std::int64_t, void*), void* ctx);
}

/// parallel_for(n, f): f(i) for i in [0, n). Every index is independent, so
/// the result is identical in serial and parallel mode.
template <typename F>
void parallel_for(std::size_t n, F&& f)
{
    struct Ctx {
        F* fn;
    } ctx{&f};
    detail::run_indexed(
        static_cast<std::int64_t>(n), thread_count(),
        [](std::int64_t i, void* c) { (*static_cast<Ctx*>(c)->fn)(static_cast<std::size_t>(i)); }, &ctx);
}

} // namespace qd::par

#endif
