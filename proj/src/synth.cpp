#include "tgclust/synth.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <random>

#include "tgclust/error.hpp"

namespace tgclust {

namespace {

bool is_weekend(const Date& d) {
    const std::chrono::weekday wd{std::chrono::sys_days{d}};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

std::vector<Date> trading_days(Date start, std::size_t count) {
    std::vector<Date> days;
    days.reserve(count);
    for (Date d = start; days.size() < count; d = add_days(d, 1))
        if (!is_weekend(d)) days.push_back(d);
    return days;
}

}  // namespace

SynthPanel generate_factor_panel(const SynthSpec& spec) {
    if (!(spec.rho >= 0.0 && spec.rho < 1.0)) throw UsageError("synth: rho must lie in [0, 1)");
    if (spec.days < 2) throw UsageError("synth: need at least 2 days");
    if (spec.groups * spec.per_group + spec.noise < 2) throw UsageError("synth: need >= 2 tickers");

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto dates = trading_days(spec.start, spec.days + 1);

    // Factors are drawn before idiosyncratic shocks so adding noise tickers
    // leaves the grouped series unchanged.
    std::vector<std::vector<double>> factors(spec.groups, std::vector<double>(spec.days));
    for (auto& f : factors)
        for (auto& v : f) v = normal(rng);

    const double load = std::sqrt(spec.rho), idio = std::sqrt(1.0 - spec.rho);
    SynthPanel out;
    const auto emit = [&](const std::string& ticker, const std::vector<double>* factor, int label) {
        std::vector<PriceRecord> recs;
        recs.reserve(dates.size());
        double price = 100.0;
        for (std::size_t t = 0; t < dates.size(); ++t) {
            if (t > 0) {
                const double shock = normal(rng);
                const double z = factor ? load * (*factor)[t - 1] + idio * shock : shock;
                price *= 1.0 + std::max(spec.volatility * z, -0.5);
            }
            PriceRecord r;
            r.date = dates[t];
            r.close = price;
            r.open = r.high = r.low = price;
            r.volume = 1e6;
            recs.push_back(r);
        }
        out.prices.emplace_back(ticker, std::move(recs));
        out.labels[ticker] = label;
    };
    for (std::size_t g = 0; g < spec.groups; ++g)
        for (std::size_t s = 0; s < spec.per_group; ++s)
            emit("G" + std::to_string(g + 1) + "S" + std::to_string(s + 1), &factors[g],
                 static_cast<int>(g));
    for (std::size_t k = 0; k < spec.noise; ++k) emit("N" + std::to_string(k + 1), nullptr, -1);
    return out;
}

void write_price_csv(std::ostream& out, const PriceSeries& prices) {
    out << "Date,Open,High,Low,Close,Volume\n";
    char buf[32];
    const auto num = [&](double v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    };
    for (const auto& r : prices.records()) {
        out << format_date(r.date) << ',' << num(r.open.value_or(r.close)) << ','
            << num(r.high.value_or(r.close)) << ',' << num(r.low.value_or(r.close)) << ','
            << num(r.close) << ',' << num(r.volume.value_or(0.0)) << '\n';
    }
}

}  // namespace tgclust
