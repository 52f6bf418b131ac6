// Compares the OpenMP kernels against their serial references on a wide
// synthetic panel.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "tgclust/cluster.hpp"
#include "tgclust/synth.hpp"

using namespace tgclust;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t per_group = argc > 1 ? std::stoul(argv[1]) : 40;
    SynthSpec spec;
    spec.groups = 8;
    spec.per_group = per_group;
    spec.days = 7 * 60;
    const auto synth = generate_factor_panel(spec);
    std::vector<ReturnSeries> returns;
    for (const auto& p : synth.prices) returns.push_back(compute_returns(p));
    const auto panel = align_panel(returns);
    const auto segments = segment_panel(panel, fixed_day_segments(panel, 60));
    const ClusterParams params;

    std::printf("threads=%d tickers=%zu dates=%zu segments=%zu\n", omp_get_max_threads(),
                panel.cols(), panel.rows(), segments.size());

    const double corr_serial = best_of(5, [&] { (void)correlation_matrix_serial(panel); });
    const double corr_omp = best_of(5, [&] { (void)correlation_matrix(panel); });
    std::printf("correlation_matrix   serial %.4fs  omp %.4fs  serial/omp %.2fx\n", corr_serial, corr_omp,
                corr_serial / corr_omp);

    const auto corr = correlation_matrix(panel);
    const auto groups = correlation_groups(corr, 0.6, Sign::positive);
    const double dis_serial = best_of(5, [&] { (void)dissimilarity_matrix_serial(groups); });
    const double dis_omp = best_of(5, [&] { (void)dissimilarity_matrix(groups); });
    std::printf("dissimilarity_matrix serial %.4fs  omp %.4fs  serial/omp %.2fx\n", dis_serial, dis_omp,
                dis_serial / dis_omp);

    const double seg_serial = best_of(3, [&] { (void)analyze_segments_serial(segments, params); });
    const double seg_omp = best_of(3, [&] { (void)analyze_segments(segments, params); });
    std::printf("analyze_segments     serial %.4fs  omp %.4fs  serial/omp %.2fx\n", seg_serial, seg_omp,
                seg_serial / seg_omp);
    return 0;
}
