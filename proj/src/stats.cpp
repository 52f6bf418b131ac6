#include "tgclust/stats.hpp"

#include <algorithm>
#include <cmath>

#include "tgclust/error.hpp"
#include "tgclust/special_functions.hpp"

namespace tgclust {

namespace {

bool is_constant(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

struct Centered {
    std::vector<double> dev;
    double sum_sq = 0.0;
};

Centered center(std::span<const double> x) {
    Centered c;
    const double m = mean(x);
    c.dev.reserve(x.size());
    for (double v : x) {
        const double d = v - m;
        c.dev.push_back(d);
        c.sum_sq += d * d;
    }
    return c;
}

// Shared by pearson and the matrix kernels so all routes round identically.
double centered_correlation(const Centered& a, const Centered& b) {
    double sxy = 0.0;
    for (std::size_t i = 0; i < a.dev.size(); ++i) sxy += a.dev[i] * b.dev[i];
    const double r = sxy / std::sqrt(a.sum_sq * b.sum_sq);
    return std::clamp(r, -1.0, 1.0);
}

void check_series(std::span<const double> x, std::size_t min_n, const char* what) {
    if (x.size() < min_n)
        throw DataError(std::string(what) + ": need at least " + std::to_string(min_n) +
                        " observations, got " + std::to_string(x.size()));
    if (is_constant(x)) throw DataError(std::string(what) + ": degenerate series (constant)");
}

struct Usable {
    std::vector<std::size_t> columns;
    std::vector<std::string> tickers;
    std::vector<std::string> excluded;
};

Usable usable_columns(const AlignedPanel& panel) {
    if (panel.rows() < 3) throw DataError("correlation matrix: need at least 3 dates");
    Usable u;
    for (std::size_t c = 0; c < panel.cols(); ++c) {
        if (is_constant(panel.column(c))) {
            u.excluded.push_back(panel.tickers()[c]);
        } else {
            u.columns.push_back(c);
            u.tickers.push_back(panel.tickers()[c]);
        }
    }
    if (u.columns.size() < 2)
        throw DataError("correlation matrix: fewer than 2 non-constant columns");
    return u;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("pearson: length mismatch");
    check_series(x, 3, "pearson");
    check_series(y, 3, "pearson");
    return centered_correlation(center(x), center(y));
}

double sample_acf(std::span<const double> x, std::size_t h) {
    check_series(x, 2, "sample_acf");
    if (h >= x.size()) throw DataError("sample_acf: lag must be below the series length");
    const auto c = center(x);
    double num = 0.0;
    for (std::size_t t = 0; t + h < x.size(); ++t) num += c.dev[t + h] * c.dev[t];
    return num / c.sum_sq;
}

LjungBoxResult ljung_box(std::span<const double> x, int lag) {
    check_series(x, 2, "ljung_box");
    const auto n = x.size();
    if (lag < 1 || static_cast<std::size_t>(lag) >= n)
        throw DataError("ljung_box: lag must satisfy 1 <= lag < n");
    const auto c = center(x);
    const double dn = static_cast<double>(n);
    double sum = 0.0;
    for (int h = 1; h <= lag; ++h) {
        double num = 0.0;
        for (std::size_t t = 0; t + h < n; ++t) num += c.dev[t + h] * c.dev[t];
        const double rho = num / c.sum_sq;
        sum += rho * rho / (dn - h);
    }
    LjungBoxResult r;
    r.statistic = dn * (dn + 2.0) * sum;
    r.lag = lag;
    r.p_value = chi_square_upper_tail(r.statistic, lag);
    return r;
}

int default_lag(std::size_t n) {
    if (n < 2) throw DataError("default_lag: need at least 2 observations");
    const int lag = static_cast<int>(std::lround(std::log(static_cast<double>(n))));
    return std::clamp(lag, 1, static_cast<int>(n) - 1);
}

double chi_square_upper_tail(double q, int df) {
    if (df < 1) throw std::invalid_argument("chi_square_upper_tail: df must be positive");
    if (q < 0.0) throw std::invalid_argument("chi_square_upper_tail: q must be non-negative");
    return std::clamp(special::gamma_q(0.5 * df, 0.5 * q), 0.0, 1.0);
}

double t_upper_tail(double t, int df) {
    if (df < 1) throw std::invalid_argument("t_upper_tail: df must be positive");
    const double nu = df;
    const double half_tail = 0.5 * special::beta_inc(0.5 * nu, 0.5, nu / (nu + t * t));
    return t >= 0.0 ? half_tail : 1.0 - half_tail;
}

double t_upper_quantile(double alpha_half, int df) {
    if (!(alpha_half > 0.0 && alpha_half < 0.5))
        throw std::invalid_argument("t_upper_quantile: alpha_half must lie in (0, 0.5)");
    if (df < 1) throw std::invalid_argument("t_upper_quantile: df must be positive");
    double lo = 0.0;
    double hi = 1.0;
    while (t_upper_tail(hi, df) > alpha_half) {
        lo = hi;
        hi *= 2.0;
    }
    // Bisection on the monotone tail; stops when the bracket stops shrinking.
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (t_upper_tail(mid, df) > alpha_half)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double correlation_critical_point(std::size_t n, double alpha) {
    if (n < kMinSegmentDates)
        throw DataError("critical point: need n >= " + std::to_string(kMinSegmentDates));
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    const double t = t_upper_quantile(alpha / 2.0, static_cast<int>(n) - 2);
    return t / std::sqrt(static_cast<double>(n) - 2.0 + t * t);
}

double delta_threshold(std::size_t n, double alpha, Sign sign) {
    const double mid = (1.0 + correlation_critical_point(n, alpha)) / 2.0;
    return sign == Sign::positive ? mid : -mid;
}

SignificanceThresholds significance_thresholds(std::size_t n, double alpha, Sign sign,
                                               std::optional<double> delta_override) {
    SignificanceThresholds th;
    th.alpha = alpha;
    th.n = n;
    th.sign = sign;
    th.c_alpha = correlation_critical_point(n, alpha);
    th.delta = delta_override ? *delta_override : delta_threshold(n, alpha, sign);
    if (!(std::abs(th.delta) < 1.0) || !(std::abs(th.delta) > th.c_alpha))
        throw UsageError("delta " + std::to_string(th.delta) + " must satisfy c_alpha (" +
                         std::to_string(th.c_alpha) + ") < |delta| < 1");
    if ((sign == Sign::positive) != (th.delta > 0.0))
        throw UsageError("delta sign does not match the correlation sign mode");
    return th;
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> tickers, std::size_t n,
                                     std::vector<double> values,
                                     std::vector<std::string> excluded)
    : tickers_(std::move(tickers)), n_(n), values_(std::move(values)),
      excluded_(std::move(excluded)) {
    const auto k = tickers_.size();
    if (values_.size() != k * k) throw DataError("correlation matrix: wrong value count");
    for (std::size_t i = 0; i < k; ++i) {
        if (values_[i * k + i] != 1.0) throw DataError("correlation matrix: diagonal must be 1");
        for (std::size_t j = 0; j < k; ++j) {
            const double v = values_[i * k + j];
            if (v != values_[j * k + i] || !(std::abs(v) <= 1.0 + 1e-12))
                throw DataError("correlation matrix: not symmetric or out of range");
        }
    }
}

CorrelationMatrix correlation_matrix(const AlignedPanel& panel) {
    auto u = usable_columns(panel);
    const auto k = static_cast<std::ptrdiff_t>(u.columns.size());
    std::vector<Centered> centered(k);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < k; ++i) centered[i] = center(panel.column(u.columns[i]));

    std::vector<double> values(k * k, 1.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < k; ++i) {
        for (std::ptrdiff_t j = i + 1; j < k; ++j) {
            const double r = centered_correlation(centered[i], centered[j]);
            values[i * k + j] = r;
            values[j * k + i] = r;
        }
    }
    return CorrelationMatrix(std::move(u.tickers), panel.rows(), std::move(values),
                             std::move(u.excluded));
}

CorrelationMatrix correlation_matrix_serial(const AlignedPanel& panel) {
    auto u = usable_columns(panel);
    const auto k = u.columns.size();
    std::vector<double> values(k * k, 1.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double r = pearson(panel.column(u.columns[i]), panel.column(u.columns[j]));
            values[i * k + j] = r;
            values[j * k + i] = r;
        }
    }
    return CorrelationMatrix(std::move(u.tickers), panel.rows(), std::move(values),
                             std::move(u.excluded));
}

}  // namespace tgclust
