#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgclust/date.hpp"

namespace tgclust {

struct PriceRecord {
    Date date;
    double close = 0.0;
    std::optional<double> open;
    std::optional<double> high;
    std::optional<double> low;
    std::optional<double> volume;
};

// Daily closing prices of one ticker, strictly increasing in date.
class PriceSeries {
public:
    PriceSeries(std::string ticker, std::vector<PriceRecord> records);

    const std::string& ticker() const { return ticker_; }
    std::span<const PriceRecord> records() const { return records_; }
    std::size_t size() const { return records_.size(); }

private:
    std::string ticker_;
    std::vector<PriceRecord> records_;
};

enum class ReturnMode { simple, log };

struct ReturnPoint {
    Date date;
    double value = 0.0;
};

// Returns dated by the later day of each price ratio.
class ReturnSeries {
public:
    ReturnSeries(std::string ticker, std::vector<ReturnPoint> points);

    const std::string& ticker() const { return ticker_; }
    std::span<const ReturnPoint> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::vector<double> values() const;

private:
    std::string ticker_;
    std::vector<ReturnPoint> points_;
};

// Date-aligned return matrix R: one column per ticker, one row per date.
class AlignedPanel {
public:
    AlignedPanel(std::vector<Date> dates, std::vector<std::string> tickers,
                 std::vector<std::vector<double>> columns);

    std::span<const Date> dates() const { return dates_; }
    std::span<const std::string> tickers() const { return tickers_; }
    std::span<const double> column(std::size_t i) const { return columns_[i]; }
    std::size_t rows() const { return dates_.size(); }
    std::size_t cols() const { return tickers_.size(); }

    // Rows [first, last) as a new panel; does not enforce the 3-row minimum.
    AlignedPanel slice(std::size_t first, std::size_t last) const;

    // Copy restricted to dates within [from, to].
    AlignedPanel between(const Date& from, const Date& to) const;

    // Copy keeping only the listed tickers (which must exist).
    AlignedPanel select(std::span<const std::string> keep) const;

private:
    struct Unchecked {};
    AlignedPanel(Unchecked, std::vector<Date> dates, std::vector<std::string> tickers,
                 std::vector<std::vector<double>> columns);

    std::vector<Date> dates_;
    std::vector<std::string> tickers_;
    std::vector<std::vector<double>> columns_;
};

struct Segment {
    Date start;
    Date end;  // inclusive
};

// Ordered, non-overlapping time segments tau_1..tau_m.
class SegmentSpec {
public:
    explicit SegmentSpec(std::vector<Segment> segments);

    std::span<const Segment> segments() const { return segments_; }
    std::size_t size() const { return segments_.size(); }

private:
    std::vector<Segment> segments_;
};

inline constexpr std::size_t kMinSegmentDates = 5;
inline constexpr std::size_t kMinPanelDates = 3;

// Reads a header line plus comma-separated rows. Requires Date and Close
// columns; Open, High, Low, Volume (and Adj Close) are optional.
PriceSeries parse_ohlc(std::istream& in, std::string ticker);

// parse_ohlc on a file; the ticker is the filename stem.
PriceSeries load_price_file(const std::filesystem::path& path);

// All *.csv files in a directory, sorted by ticker.
std::vector<PriceSeries> load_price_directory(const std::filesystem::path& dir);

ReturnSeries compute_returns(const PriceSeries& prices, ReturnMode mode = ReturnMode::simple);

// Intersection of all series' dates; columns in ascending ticker order.
AlignedPanel align_panel(std::span<const ReturnSeries> series);

std::vector<AlignedPanel> segment_panel(const AlignedPanel& panel, const SegmentSpec& spec);

// Consecutive 2-calendar-month windows starting at `from`. A window starts
// while its start is before `to`; the last one is clipped to end at `to`.
SegmentSpec bimonthly_segments(const Date& from, const Date& to);

// Consecutive blocks of `days` panel dates; trailing dates that do not fill
// a whole block are dropped.
SegmentSpec fixed_day_segments(const AlignedPanel& panel, std::size_t days);

// CSV of "start,end" lines (an optional header is skipped).
SegmentSpec read_segment_file(std::istream& in);

// Aligned-panel cache: "Date" column followed by one column per ticker.
void write_panel_csv(std::ostream& out, const AlignedPanel& panel);
AlignedPanel read_panel_csv(std::istream& in);

}  // namespace tgclust
