// Compares the OpenMP sweeps against the serial reference implementations
// and checks that both produce identical output (fixed reduction order).
#include <chrono>
#include <cmath>
#include <cstdio>

#include "dqpt/topology.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

}  // namespace

int main() {
    dqpt::QuenchSpec q;
    q.initial = {1.0, 0.0, 0.9, 0.25, 0.5};
    q.final_params = {1.0, 0.0, 0.9, 1.7, 0.5};
    q.n_momenta = 2000;
    q.t_max = 6.0;
    q.n_times = 601;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif

    auto t0 = clock_type::now();
    const dqpt::QuenchWorkspace ws(q);
    std::printf("workspace build:        %8.3f s\n", seconds_since(t0));

    t0 = clock_type::now();
    const dqpt::RateSeries par = dqpt::rate_series(ws);
    const double t_par = seconds_since(t0);

    t0 = clock_type::now();
    const dqpt::RateSeries ser = dqpt::rate_series_serial(ws);
    const double t_ser = seconds_since(t0);

    bool identical = true;
    for (std::size_t i = 0; i < par.t.size(); ++i)
        if (par.bio[i] != ser.bio[i] || par.self_normal[i] != ser.self_normal[i]) identical = false;
    std::printf("rate_series  parallel:  %8.3f s\n", t_par);
    std::printf("rate_series  serial:    %8.3f s   speedup %.2fx, bitwise %s\n", t_ser,
                t_ser / t_par, identical ? "identical" : "DIFFERENT");

    t0 = clock_type::now();
    const dqpt::DtopSeries dpar = dqpt::dtop_series(ws);
    const double dt_par = seconds_since(t0);

    t0 = clock_type::now();
    const dqpt::DtopSeries dser = dqpt::dtop_series_serial(ws);
    const double dt_ser = seconds_since(t0);

    bool d_identical = dpar.n_masked == dser.n_masked;
    for (std::size_t i = 0; i < dpar.nu.size(); ++i) {
        const bool both_nan = std::isnan(dpar.nu[i]) && std::isnan(dser.nu[i]);
        if (!both_nan && dpar.nu[i] != dser.nu[i]) d_identical = false;
    }
    std::printf("dtop_series  parallel:  %8.3f s\n", dt_par);
    std::printf("dtop_series  serial:    %8.3f s   speedup %.2fx, bitwise %s\n", dt_ser,
                dt_ser / dt_par, d_identical ? "identical" : "DIFFERENT");

    return (identical && d_identical) ? 0 : 1;
}
