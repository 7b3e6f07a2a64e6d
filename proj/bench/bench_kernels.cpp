// Serial vs OpenMP timings for the parallel kernels. Also checks that both
// paths produce identical output.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "hyperlevy/kernels.hpp"
#include "hyperlevy/levy_model.hpp"
#include "hyperlevy/regime.hpp"
#include "hyperlevy/sampler.hpp"
#include "hyperlevy/spectral.hpp"

using namespace hyperlevy;
using kernels::Exec;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

bool report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s serial %9.4f s   openmp %9.4f s   speedup %5.2fx   %s\n", name, serial, parallel,
                serial / parallel, same ? "identical" : "MISMATCH");
    return same;
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d, best of %d\n", kernels::max_threads(), reps);
    bool ok = true;

    {
        const auto m = LevyMeasure1D::limit_b(1);
        spectral::InversionOptions s, p;
        s.exec = Exec::serial;
        p.exec = Exec::openmp;
        spectral::DensityGrid a, b;
        const double ts = best_of(reps, [&] { a = spectral::invert_to_density(m, {}, s); });
        const double tp = best_of(reps, [&] { b = spectral::invert_to_density(m, {}, p); });
        ok &= report("invert limit_b(1)", ts, tp, a.values == b.values);
    }
    {
        const auto fam = regime::SequenceFamily::remark(1.0, 0.7);
        std::vector<long> n;
        for (long i = 4; i <= 200; ++i) n.push_back(i);
        regime::ProbeTable a, b;
        const double ts = best_of(reps, [&] { a = regime::probe_regime(fam, n, {0.1, 0.5}, {}, Exec::serial); });
        const double tp = best_of(reps, [&] { b = regime::probe_regime(fam, n, {0.1, 0.5}, {}, Exec::openmp); });
        bool same = a.rows.size() == b.rows.size();
        for (std::size_t i = 0; same && i < a.rows.size(); ++i) same = a.rows[i].j == b.rows[i].j;
        ok &= report("jprobe remark(1, 0.7)", ts, tp, same);
    }
    {
        const auto m = LevyMeasure1D::limit_b(2);
        sampler::SamplerConfig s;
        s.seed = 7;
        auto p = s;
        p.exec = Exec::openmp;
        sampler::SampleBatch a, b;
        const double ts = best_of(reps, [&] { a = sampler::sample(m, s, 200000); });
        const double tp = best_of(reps, [&] { b = sampler::sample(m, p, 200000); });
        ok &= report("sample limit_b(2) 2e5", ts, tp, a.values == b.values);
    }
    return ok ? 0 : 1;
}
