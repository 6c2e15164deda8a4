// Benchmark comparing the serial reference Monte Carlo kernels against the
// OpenMP-parallel ones.  Both paths reduce fixed-size sample blocks in block
// order, so their outputs must agree bit for bit; the benchmark verifies that
// while timing them.
#include "fraczeta/estimate.hpp"
#include "fraczeta/spaces.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace fraczeta;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_call(F&& f) {
    const double t0 = now_seconds();
    f();
    return now_seconds() - t0;
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t samples = 2000000;
    std::uint64_t seed = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--samples") == 0 && i + 1 < argc) {
            samples = std::strtoull(argv[++i], nullptr, 10);
        } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::fprintf(stderr, "usage: %s [--samples N] [--seed S]\n", argv[0]);
            return 2;
        }
    }

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; the parallel policy runs serially\n");
#endif
    std::printf("samples: %llu, seed: %llu\n\n", (unsigned long long)samples,
                (unsigned long long)seed);

    const MMSpace plane = make_space("euclid-plane");
    const PointSet seg = make_set(plane, {{"set", "unit-segment"}});
    const auto grid = log_spaced_grid(1e-3, 0.2, 24);

    EmpiricalTubeData tubeSerial, tubeParallel;
    const double tTubeSerial = time_call([&] {
        tubeSerial = mc_tube_volume(plane, seg, grid, samples, seed, ExecPolicy::serial);
    });
    const double tTubeParallel = time_call([&] {
        tubeParallel = mc_tube_volume(plane, seg, grid, samples, seed, ExecPolicy::parallel);
    });

    bool tubeMatch = tubeSerial.volume.size() == tubeParallel.volume.size();
    for (size_t i = 0; tubeMatch && i < tubeSerial.volume.size(); ++i)
        tubeMatch = tubeSerial.volume[i] == tubeParallel.volume[i] &&
                    tubeSerial.sigma[i] == tubeParallel.sigma[i];
    std::printf("tube volume   serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
                tTubeSerial, tTubeParallel, tTubeSerial / tTubeParallel,
                tubeMatch ? "bit-identical" : "MISMATCH");

    const std::complex<double> s{1.5, 3.0};
    ZetaEstimate zetaSerial, zetaParallel;
    const double tZetaSerial = time_call([&] {
        zetaSerial = mc_distance_zeta(plane, seg, 0.2, s, samples, seed, ExecPolicy::serial);
    });
    const double tZetaParallel = time_call([&] {
        zetaParallel = mc_distance_zeta(plane, seg, 0.2, s, samples, seed, ExecPolicy::parallel);
    });

    const bool zetaMatch = zetaSerial.value.real() == zetaParallel.value.real() &&
                           zetaSerial.value.imag() == zetaParallel.value.imag() &&
                           zetaSerial.standardError == zetaParallel.standardError &&
                           zetaSerial.divergenceSuspected == zetaParallel.divergenceSuspected;
    std::printf("distance zeta serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
                tZetaSerial, tZetaParallel, tZetaSerial / tZetaParallel,
                zetaMatch ? "bit-identical" : "MISMATCH");

    if (!tubeMatch || !zetaMatch) {
        std::fprintf(stderr, "error: serial and parallel kernels disagree\n");
        return 1;
    }
    return 0;
}
