// Compares the OpenMP-parallel grid kernels against the serial reference
// path on the two hot spots: Lipschitz curve assembly and the spherical
// function grid sweep.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "lipft/functionals.hpp"
#include "lipft/parallel.hpp"
#include "lipft/profiles.hpp"
#include "lipft/spaces.hpp"

using namespace lipft;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_ms(F&& f) {
    const double t0 = now_ms();
    f();
    return now_ms() - t0;
}

} // namespace

int main() {
    const auto space = SpectralSpace::euclidean(2);
    const auto p = power_tail_profile(0.5, 2);
    const auto grid = dyadic_grid(0.5, 16);

    std::vector<double> lam, ts;
    for (int c = -6; c <= 6; ++c) lam.push_back(std::ldexp(1.0, c));
    for (int c = -6; c <= 6; ++c) ts.push_back(std::ldexp(1.0, c));

    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial ms", "omp ms", "speedup");

    {
        double serial_val = 0.0, par_val = 0.0;
        const std::size_t n = lam.size() * ts.size();
        auto eval = [&](std::size_t idx) {
            return space.one_minus_phi(lam[idx / ts.size()], ts[idx % ts.size()]);
        };
        const double s = time_ms([&] {
            for (int r = 0; r < 2000; ++r) {
                auto v = serial_map(n, eval);
                serial_val = pairwise_sum(v);
            }
        });
        const double t = time_ms([&] {
            for (int r = 0; r < 2000; ++r) {
                auto v = parallel_map(n, eval);
                par_val = pairwise_sum(v);
            }
        });
        std::printf("%-28s %10.1f %10.1f %8.2f  (match=%d)\n", "spherical grid sweep", s, t,
                    s / t, serial_val == par_val);
    }

    {
        FunctionalCurve ser, par;
        const double s = time_ms([&] {
            ScopedSerial guard;
            ser = lipschitz_curve(space, p, grid);
        });
        const double t = time_ms([&] { par = lipschitz_curve(space, p, grid); });
        bool match = true;
        for (std::size_t i = 0; i < ser.values.size(); ++i)
            if (ser.values[i] != par.values[i]) match = false;
        std::printf("%-28s %10.1f %10.1f %8.2f  (match=%d)\n", "lipschitz curve", s, t, s / t,
                    match);
    }
    return 0;
}
