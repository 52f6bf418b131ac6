#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgclust/ingest.hpp"

namespace tgclust {

// Sample correlation r(x, y). Throws DataError on length mismatch, n < 3,
// or a constant vector.
double pearson(std::span<const double> x, std::span<const double> y);

// gamma(h) / gamma(0), with the 1/n autocovariance normalisation.
double sample_acf(std::span<const double> x, std::size_t h);

struct LjungBoxResult {
    double statistic = 0.0;
    int lag = 0;
    double p_value = 1.0;
};

// Q = n(n+2) sum_{h=1..lag} rho(h)^2 / (n-h), referred to chi-square(lag).
LjungBoxResult ljung_box(std::span<const double> x, int lag);

// round(ln n), at least 1 and below n.
int default_lag(std::size_t n);

// P(chi2_df > q).
double chi_square_upper_tail(double q, int df);

// P(T_df > t).
double t_upper_tail(double t, int df);

// t with P(T_df > t) = alpha_half, for 0 < alpha_half < 0.5.
double t_upper_quantile(double alpha_half, int df);

// Critical correlation c_alpha for H0: rho = 0 with region |r| > c_alpha,
// from the t statistic with n - 2 degrees of freedom. Requires n >= 5.
double correlation_critical_point(std::size_t n, double alpha);

enum class Sign { positive, negative };

// (1 + c_alpha) / 2, negated for Sign::negative.
double delta_threshold(std::size_t n, double alpha, Sign sign);

struct SignificanceThresholds {
    double alpha = 0.05;
    std::size_t n = 0;
    double c_alpha = 0.0;
    double delta = 0.0;
    Sign sign = Sign::positive;
};

// Thresholds for one segment; `delta_override` replaces the midpoint rule.
SignificanceThresholds significance_thresholds(std::size_t n, double alpha, Sign sign,
                                               std::optional<double> delta_override = {});

class CorrelationMatrix {
public:
    CorrelationMatrix(std::vector<std::string> tickers, std::size_t n,
                      std::vector<double> values, std::vector<std::string> excluded = {});

    std::span<const std::string> tickers() const { return tickers_; }
    std::size_t size() const { return tickers_.size(); }
    std::size_t sample_size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
    std::span<const double> values() const { return values_; }

    // Constant columns dropped from the matrix.
    std::span<const std::string> excluded() const { return excluded_; }

private:
    std::vector<std::string> tickers_;
    std::size_t n_;
    std::vector<double> values_;
    std::vector<std::string> excluded_;
};

// Pairwise pearson over all usable columns, evaluated in parallel over rows.
// Constant columns are excluded and listed in excluded(). Throws DataError if
// fewer than 2 columns remain.
CorrelationMatrix correlation_matrix(const AlignedPanel& panel);

// Single-threaded reference; bit-identical to correlation_matrix.
CorrelationMatrix correlation_matrix_serial(const AlignedPanel& panel);

}  // namespace tgclust
