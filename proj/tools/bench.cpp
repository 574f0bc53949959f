// Timing comparison between the serial reference path and the OpenMP
// kernels: batch mutate+evaluate, grid score refresh, archive score refresh
// (exhaustive reference vs spatial index).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "qd/core.hpp"
#include "qd/parallel.hpp"

using namespace qd;
namespace chrono = std::chrono;

namespace {

double time_ms(int reps, auto&& fn)
{
    auto t0 = chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        fn();
    auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

Batch random_batch(const Task& task, int n, Rng& rng, std::uint64_t& next_id)
{
    Batch batch;
    for (int i = 0; i < n; ++i)
        batch.push_back(random_individual(task, rng, next_id));
    return batch;
}

} // namespace

int main(int argc, char** argv)
{
    int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    int threads = omp_get_max_threads();
    const char* env = std::getenv("QD_THREADS");
    if (env != nullptr && *env != '\0')
        threads = std::max(1, std::atoi(env));

    Task arm = make_arm_task();
    RunConfig cfg;
    cfg.mutation = {MutationKind::Polynomial, 0.125, 10.0};
    cfg.seed = 42;

    std::printf("kernel                           serial(ms)  parallel(ms)  speedup (%d threads)\n",
                threads);

    // Batch variation + evaluation.
    {
        Rng rng(1);
        std::uint64_t next_id = 1;
        Batch parents = random_batch(arm, 2000 * scale, rng, next_id);
        evaluate_batch(parents, arm, 1);
        double serial = 0.0, parallel = 0.0;
        par::set_thread_count(1);
        serial = time_ms(20, [&] { produce_offspring(parents, cfg, arm, 2, next_id); });
        par::set_thread_count(threads);
        parallel = time_ms(20, [&] { produce_offspring(parents, cfg, arm, 2, next_id); });
        std::printf("batch mutate+evaluate (n=%-6d %10.3f  %12.3f  %7.2fx\n", 2000 * scale,
                    serial, parallel, serial / parallel);
    }

    // Grid container score refresh.
    {
        GridContainer grid({{100, 100}, 3, 15, 1.0});
        Rng rng(2);
        for (int i = 0; i < 20000 * scale; ++i) {
            Individual ind;
            ind.id = i + 1;
            ind.descriptor.coords = {rng.uniform(), rng.uniform()};
            ind.fitness = -rng.uniform();
            grid.add(ind);
        }
        par::set_thread_count(1);
        double serial = time_ms(20, [&] { grid.update(); });
        par::set_thread_count(threads);
        double parallel = time_ms(20, [&] { grid.update(); });
        std::printf("grid update (cells=%-10zu %10.3f  %12.3f  %7.2fx\n", grid.size(), serial,
                    parallel, serial / parallel);
    }

    // Archive container score refresh: reference scan vs spatial index.
    {
        ArchiveContainer ref({2, 0.01, 0.1, 15, 1.0, false});
        ArchiveContainer fast({2, 0.01, 0.1, 15, 1.0, true});
        Rng rng(3);
        for (int i = 0; i < 40000 * scale; ++i) {
            Individual ind;
            ind.id = i + 1;
            ind.descriptor.coords = {rng.uniform(), rng.uniform()};
            ind.fitness = -rng.uniform() * 0.25;
            ref.add(ind);
        }
        Rng rng2(3);
        for (int i = 0; i < 40000 * scale; ++i) {
            Individual ind;
            ind.id = i + 1;
            ind.descriptor.coords = {rng2.uniform(), rng2.uniform()};
            ind.fitness = -rng2.uniform() * 0.25;
            fast.add(ind);
        }
        par::set_thread_count(1);
        double serial = time_ms(3, [&] { ref.update(); });
        par::set_thread_count(threads);
        double parallel = time_ms(3, [&] { ref.update(); });
        std::printf("archive update, exhaustive (n=%zu) %8.3f  %12.3f  %7.2fx\n", ref.size(),
                    serial, parallel, serial / parallel);
        par::set_thread_count(1);
        double idx_serial = time_ms(10, [&] { fast.update(); });
        par::set_thread_count(threads);
        double idx_parallel = time_ms(10, [&] { fast.update(); });
        std::printf("archive update, indexed (n=%zu)    %8.3f  %12.3f  %7.2fx\n", fast.size(),
                    idx_serial, idx_parallel, idx_serial / idx_parallel);
        std::printf("index vs exhaustive serial speedup: %.2fx\n", serial / idx_serial);
    }
    return 0;
}
