#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tgclust/ingest.hpp"

namespace tgclust {

// Common-factor panel: ticker r_i = vol * (sqrt(rho) f_g + sqrt(1 - rho) e_i)
// for stocks of group g, so within-group return correlation is rho and
// groups are independent. Noise tickers carry only their own shock.
struct SynthSpec {
    std::size_t groups = 3;
    std::size_t per_group = 4;
    std::size_t noise = 0;
    double rho = 0.8;
    std::size_t days = 280;  // returns; prices have days + 1 rows
    double volatility = 0.02;
    std::uint64_t seed = 42;
    Date start{std::chrono::year{2008}, std::chrono::June, std::chrono::day{2}};
};

struct SynthPanel {
    std::vector<PriceSeries> prices;
    std::map<std::string, int> labels;  // group index, -1 for noise tickers
};

// Tickers are "G<group>S<k>" (1-based) and "N<k>" for noise; trading days
// skip weekends.
SynthPanel generate_factor_panel(const SynthSpec& spec);

// Date,Open,High,Low,Close,Volume with open = high = low = close.
void write_price_csv(std::ostream& out, const PriceSeries& prices);

}  // namespace tgclust
