#include "tgclust/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "tgclust/error.hpp"

namespace tgclust {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n\"");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string_view rest = line;
    while (true) {
        const auto pos = rest.find(',');
        out.push_back(trim(rest.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_number(const std::string& field, const std::string& what, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() ||
        !std::isfinite(value))
        throw DataError("line " + std::to_string(line_no) + ": cannot parse " + what + " '" +
                        field + "'");
    return value;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

PriceSeries::PriceSeries(std::string ticker, std::vector<PriceRecord> records)
    : ticker_(std::move(ticker)), records_(std::move(records)) {
    if (ticker_.empty()) throw DataError("empty ticker");
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (!(records_[i].close > 0.0))
            throw DataError(ticker_ + ": non-positive price on " + format_date(records_[i].date));
        if (i > 0 && !(records_[i - 1].date < records_[i].date))
            throw DataError(ticker_ + ": dates not strictly increasing at " +
                            format_date(records_[i].date));
    }
}

ReturnSeries::ReturnSeries(std::string ticker, std::vector<ReturnPoint> points)
    : ticker_(std::move(ticker)), points_(std::move(points)) {
    if (ticker_.empty()) throw DataError("empty ticker");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i - 1].date < points_[i].date))
            throw DataError(ticker_ + ": return dates not strictly increasing");
}

std::vector<double> ReturnSeries::values() const {
    std::vector<double> v;
    v.reserve(points_.size());
    for (const auto& p : points_) v.push_back(p.value);
    return v;
}

AlignedPanel::AlignedPanel(std::vector<Date> dates, std::vector<std::string> tickers,
                           std::vector<std::vector<double>> columns)
    : AlignedPanel(Unchecked{}, std::move(dates), std::move(tickers), std::move(columns)) {
    if (dates_.size() < kMinPanelDates)
        throw DataError("insufficient overlap: " + std::to_string(dates_.size()) +
                        " common dates (need " + std::to_string(kMinPanelDates) + ")");
}

AlignedPanel::AlignedPanel(Unchecked, std::vector<Date> dates, std::vector<std::string> tickers,
                           std::vector<std::vector<double>> columns)
    : dates_(std::move(dates)), tickers_(std::move(tickers)), columns_(std::move(columns)) {
    if (tickers_.size() != columns_.size())
        throw DataError("panel: ticker count does not match column count");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < tickers_.size(); ++i) {
        if (!seen.insert(tickers_[i]).second) throw DataError("panel: duplicate ticker " + tickers_[i]);
        if (columns_[i].size() != dates_.size())
            throw DataError("panel: column " + tickers_[i] + " has wrong length");
    }
    for (std::size_t i = 1; i < dates_.size(); ++i)
        if (!(dates_[i - 1] < dates_[i])) throw DataError("panel: dates not strictly increasing");
}

AlignedPanel AlignedPanel::slice(std::size_t first, std::size_t last) const {
    last = std::min(last, dates_.size());
    first = std::min(first, last);
    std::vector<Date> d(dates_.begin() + first, dates_.begin() + last);
    std::vector<std::vector<double>> cols;
    cols.reserve(columns_.size());
    for (const auto& c : columns_) cols.emplace_back(c.begin() + first, c.begin() + last);
    return AlignedPanel(Unchecked{}, std::move(d), tickers_, std::move(cols));
}

AlignedPanel AlignedPanel::between(const Date& from, const Date& to) const {
    const auto lo = std::lower_bound(dates_.begin(), dates_.end(), from);
    const auto hi = std::upper_bound(dates_.begin(), dates_.end(), to);
    return slice(lo - dates_.begin(), std::max(lo, hi) - dates_.begin());
}

AlignedPanel AlignedPanel::select(std::span<const std::string> keep) const {
    std::vector<std::string> names(keep.begin(), keep.end());
    std::sort(names.begin(), names.end());
    std::vector<std::vector<double>> cols;
    for (const auto& name : names) {
        const auto it = std::find(tickers_.begin(), tickers_.end(), name);
        if (it == tickers_.end()) throw DataError("unknown ticker " + name);
        cols.push_back(columns_[it - tickers_.begin()]);
    }
    return AlignedPanel(Unchecked{}, dates_, std::move(names), std::move(cols));
}

SegmentSpec::SegmentSpec(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw UsageError("segmentation has no segments");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (segments_[i].end < segments_[i].start)
            throw UsageError("segment " + std::to_string(i + 1) + " ends before it starts");
        if (i > 0 && !(segments_[i - 1].end < segments_[i].start))
            throw UsageError("segment " + std::to_string(i + 1) +
                             " overlaps or precedes the previous one");
    }
}

PriceSeries parse_ohlc(std::istream& in, std::string ticker) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!is_blank(line)) break;
    }
    if (is_blank(line)) throw DataError(ticker + ": empty file");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    const auto header = split_csv(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col.emplace(lower(header[i]), i);
    if (!col.contains("date") || !col.contains("close"))
        throw DataError(ticker + ": unparseable header '" + line +
                        "' (need Date and Close columns)");
    const auto optional_col = [&](const char* name) -> std::optional<std::size_t> {
        const auto it = col.find(name);
        return it == col.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    };
    const std::size_t date_col = col["date"], close_col = col["close"];
    const auto open_col = optional_col("open"), high_col = optional_col("high"),
               low_col = optional_col("low"), volume_col = optional_col("volume");

    std::vector<PriceRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const auto fields = split_csv(line);
        if (fields.size() < header.size())
            throw DataError(ticker + ": line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
        if (fields[date_col].empty())
            throw DataError(ticker + ": line " + std::to_string(line_no) + " has a missing date");
        PriceRecord rec;
        rec.date = parse_date(fields[date_col]);
        rec.close = parse_number(fields[close_col], "close", line_no);
        if (!(rec.close > 0.0))
            throw DataError(ticker + ": non-positive price on " + fields[date_col]);
        const auto opt = [&](std::optional<std::size_t> c, const char* what) {
            return c ? std::optional<double>(parse_number(fields[*c], what, line_no)) : std::nullopt;
        };
        rec.open = opt(open_col, "open");
        rec.high = opt(high_col, "high");
        rec.low = opt(low_col, "low");
        rec.volume = opt(volume_col, "volume");
        records.push_back(rec);
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const PriceRecord& a, const PriceRecord& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].date == records[i - 1].date)
            throw DataError(ticker + ": duplicate date " + format_date(records[i].date));
    return PriceSeries(std::move(ticker), std::move(records));
}

PriceSeries load_price_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return parse_ohlc(in, path.stem().string());
}

std::vector<PriceSeries> load_price_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw DataError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && lower(entry.path().extension().string()) == ".csv")
            files.push_back(entry.path());
    if (files.empty()) throw DataError("no input files in " + dir.string());
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.stem() < b.stem(); });
    std::vector<PriceSeries> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(load_price_file(f));
    return out;
}

ReturnSeries compute_returns(const PriceSeries& prices, ReturnMode mode) {
    const auto recs = prices.records();
    if (recs.size() < 2)
        throw DataError(prices.ticker() + ": need at least 2 prices to compute returns");
    std::vector<ReturnPoint> pts;
    pts.reserve(recs.size() - 1);
    for (std::size_t k = 1; k < recs.size(); ++k) {
        const double ratio = recs[k].close / recs[k - 1].close;
        const double r = mode == ReturnMode::simple ? ratio - 1.0 : std::log(ratio);
        pts.push_back({recs[k].date, r});
    }
    return ReturnSeries(prices.ticker(), std::move(pts));
}

AlignedPanel align_panel(std::span<const ReturnSeries> series) {
    if (series.size() < 2) throw DataError("need at least 2 return series to align");

    std::vector<const ReturnSeries*> sorted;
    for (const auto& s : series) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->ticker() < b->ticker(); });

    std::vector<Date> common;
    for (const auto& p : sorted.front()->points()) common.push_back(p.date);
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        std::vector<Date> next;
        auto pts = sorted[i]->points();
        auto it = pts.begin();
        for (const auto& d : common) {
            it = std::lower_bound(it, pts.end(), d,
                                  [](const ReturnPoint& p, const Date& v) { return p.date < v; });
            if (it != pts.end() && it->date == d) next.push_back(d);
        }
        common = std::move(next);
    }
    if (common.size() < kMinPanelDates)
        throw DataError("insufficient overlap: " + std::to_string(common.size()) +
                        " common dates across " + std::to_string(series.size()) + " series");

    std::vector<std::string> tickers;
    std::vector<std::vector<double>> columns;
    for (const auto* s : sorted) {
        tickers.push_back(s->ticker());
        std::vector<double> col;
        col.reserve(common.size());
        auto pts = s->points();
        auto it = pts.begin();
        for (const auto& d : common) {
            it = std::lower_bound(it, pts.end(), d,
                                  [](const ReturnPoint& p, const Date& v) { return p.date < v; });
            col.push_back(it->value);
        }
        columns.push_back(std::move(col));
    }
    return AlignedPanel(std::move(common), std::move(tickers), std::move(columns));
}

std::vector<AlignedPanel> segment_panel(const AlignedPanel& panel, const SegmentSpec& spec) {
    std::vector<AlignedPanel> out;
    out.reserve(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& seg = spec.segments()[i];
        auto sub = panel.between(seg.start, seg.end);
        if (sub.rows() < kMinSegmentDates)
            throw DataError("segment " + std::to_string(i + 1) + " [" + format_date(seg.start) +
                            ", " + format_date(seg.end) + "] has " + std::to_string(sub.rows()) +
                            " dates (need " + std::to_string(kMinSegmentDates) + ")");
        out.push_back(std::move(sub));
    }
    return out;
}

SegmentSpec bimonthly_segments(const Date& from, const Date& to) {
    if (!(from < to)) throw UsageError("period start must precede its end");
    std::vector<Segment> segs;
    for (int k = 0;; k += 2) {
        const Date start = add_months(from, k);
        if (!(start < to)) break;
        // The last window runs to `to` inclusive, whether that clips or extends it.
        const Date next = add_months(from, k + 2);
        const Date end = next < to ? add_days(next, -1) : to;
        segs.push_back({start, end});
    }
    return SegmentSpec(std::move(segs));
}

SegmentSpec fixed_day_segments(const AlignedPanel& panel, std::size_t days) {
    if (days < kMinSegmentDates)
        throw UsageError("segments need at least " + std::to_string(kMinSegmentDates) + " days");
    const auto dates = panel.dates();
    std::vector<Segment> segs;
    for (std::size_t first = 0; first + days <= dates.size(); first += days)
        segs.push_back({dates[first], dates[first + days - 1]});
    if (segs.empty())
        throw DataError("panel has " + std::to_string(dates.size()) +
                        " dates, fewer than one segment of " + std::to_string(days));
    return SegmentSpec(std::move(segs));
}

SegmentSpec read_segment_file(std::istream& in) {
    std::vector<Segment> segs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (is_blank(line) || line[0] == '#') continue;
        const auto fields = split_csv(line);
        if (first && !fields.empty() && lower(fields[0]) == "start") {
            first = false;
            continue;
        }
        first = false;
        if (fields.size() < 2) throw UsageError("segment file: expected 'start,end' in '" + line + "'");
        segs.push_back({parse_date(fields[0]), parse_date(fields[1])});
    }
    return SegmentSpec(std::move(segs));
}

void write_panel_csv(std::ostream& out, const AlignedPanel& panel) {
    out << "Date";
    for (const auto& t : panel.tickers()) out << ',' << t;
    out << '\n';
    char buf[32];
    for (std::size_t r = 0; r < panel.rows(); ++r) {
        out << format_date(panel.dates()[r]);
        for (std::size_t c = 0; c < panel.cols(); ++c) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, panel.column(c)[r]);
            out << ',' << std::string_view(buf, ptr - buf);
        }
        out << '\n';
    }
}

AlignedPanel read_panel_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("panel cache: empty input");
    const auto header = split_csv(line);
    if (header.empty() || lower(header[0]) != "date")
        throw DataError("panel cache: header must start with Date");
    std::vector<std::string> tickers(header.begin() + 1, header.end());
    std::vector<std::vector<double>> columns(tickers.size());
    std::vector<Date> dates;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw DataError("panel cache: line " + std::to_string(line_no) + " has wrong field count");
        dates.push_back(parse_date(fields[0]));
        for (std::size_t c = 0; c < tickers.size(); ++c)
            columns[c].push_back(parse_number(fields[c + 1], "return", line_no));
    }
    return AlignedPanel(std::move(dates), std::move(tickers), std::move(columns));
}

}  // namespace tgclust
