#include "tgclust/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "tgclust/error.hpp"

namespace tgclust {

namespace fs = std::filesystem;

namespace {

const char* to_string(ReturnMode m) { return m == ReturnMode::simple ? "simple" : "log"; }

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::ofstream open_text(const fs::path& path, const std::string& hash, const char* comment = "#") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << comment << " config_hash: " << hash << '\n';
    return out;
}

fs::path prepare_out(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(c.out_dir, ec);
    if (ec) throw DataError("cannot create output directory " + c.out_dir.string());
    return c.out_dir;
}

struct GraphContext {
    TemporalGraph graph;
    std::vector<Segment> segments;
    std::vector<std::string> tickers;
};

GraphContext graph_context(const RunConfig& c) {
    if (!c.graph_file.empty()) {
        std::ifstream in(c.graph_file);
        if (!in) throw DataError("cannot open " + c.graph_file.string());
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw DataError("graph json: " + std::string(e.what()));
        }
        auto loaded = tgc_from_json(j);
        TickerSet all;
        for (const auto& v : loaded.graph.vertices()) all.insert(v.members.begin(), v.members.end());
        return {std::move(loaded.graph), std::move(loaded.segments), {all.begin(), all.end()}};
    }
    auto result = run_pipeline(c);
    const auto segs = result.segments.segments();
    const auto tickers = result.panel.tickers();
    return {std::move(result.graph), {segs.begin(), segs.end()}, {tickers.begin(), tickers.end()}};
}

}  // namespace

json config_to_json(const RunConfig& c) {
    return {{"data", c.data_dir.generic_string()},
            {"tickers", c.tickers},
            {"from", c.from ? json(format_date(*c.from)) : json(nullptr)},
            {"to", c.to ? json(format_date(*c.to)) : json(nullptr)},
            {"segment", segment_rule_text(c)},
            {"alpha", c.alpha},
            {"delta", optional_json(c.delta)},
            {"negative", c.sign == Sign::negative},
            {"linkage", to_string(c.linkage)},
            {"cut_height", optional_json(c.cut_height)},
            {"lag", optional_json(c.lag)},
            {"returns", to_string(c.returns)},
            {"k", c.k},
            {"stock", c.stock},
            {"include_outliers", c.include_outliers},
            {"by_year", c.by_year},
            {"seed", c.seed}};
}

RunConfig config_from_json(const json& j, RunConfig c) {
    try {
        if (!j.is_object()) throw UsageError("config must be a JSON object");
        const auto date = [](const json& v) { return std::optional<Date>(parse_date(v.get<std::string>())); };
        for (const auto& [key, v] : j.items()) {
            if (key == "data") c.data_dir = v.get<std::string>();
            else if (key == "tickers") c.tickers = v.get<std::vector<std::string>>();
            else if (key == "from") c.from = v.is_null() ? std::nullopt : date(v);
            else if (key == "to") c.to = v.is_null() ? std::nullopt : date(v);
            else if (key == "segment") parse_segment_rule(v.get<std::string>(), c);
            else if (key == "alpha") c.alpha = v.get<double>();
            else if (key == "delta") c.delta = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
            else if (key == "negative") c.sign = v.get<bool>() ? Sign::negative : Sign::positive;
            else if (key == "linkage") c.linkage = parse_linkage(v.get<std::string>());
            else if (key == "cut_height") c.cut_height = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
            else if (key == "lag") c.lag = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
            else if (key == "returns") {
                const auto s = v.get<std::string>();
                if (s != "simple" && s != "log") throw UsageError("returns must be simple or log");
                c.returns = s == "log" ? ReturnMode::log : ReturnMode::simple;
            }
            else if (key == "k") c.k = v.get<std::size_t>();
            else if (key == "stock") c.stock = v.get<std::string>();
            else if (key == "include_outliers") c.include_outliers = v.get<bool>();
            else if (key == "by_year") c.by_year = v.get<bool>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "out") c.out_dir = v.get<std::string>();
            else if (key == "graph") c.graph_file = v.get<std::string>();
            else throw UsageError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    return c;
}

std::string config_hash(const RunConfig& c) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : config_to_json(c).dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void parse_segment_rule(const std::string& text, RunConfig& c) {
    if (text == "bimonthly") {
        c.segment_rule = SegmentRule::bimonthly;
    } else if (text.rfind("days:", 0) == 0) {
        const auto n = text.substr(5);
        if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("invalid segment rule '" + text + "'");
        c.segment_rule = SegmentRule::fixed_days;
        c.segment_days = std::stoul(n);
    } else if (text.rfind("file:", 0) == 0 && text.size() > 5) {
        c.segment_rule = SegmentRule::file;
        c.segment_file = text.substr(5);
    } else {
        throw UsageError("invalid segment rule '" + text + "' (bimonthly, days:N or file:PATH)");
    }
}

std::string segment_rule_text(const RunConfig& c) {
    switch (c.segment_rule) {
        case SegmentRule::bimonthly: return "bimonthly";
        case SegmentRule::fixed_days: return "days:" + std::to_string(c.segment_days);
        case SegmentRule::file: return "file:" + c.segment_file.generic_string();
    }
    return {};
}

std::vector<ReturnSeries> load_returns(const RunConfig& c) {
    std::vector<PriceSeries> prices;
    if (c.tickers.empty()) {
        prices = load_price_directory(c.data_dir);
    } else {
        auto names = c.tickers;
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        for (const auto& t : names) prices.push_back(load_price_file(c.data_dir / (t + ".csv")));
    }
    std::vector<ReturnSeries> out;
    for (const auto& p : prices) {
        auto r = compute_returns(p, c.returns);
        if (!c.from && !c.to) {
            out.push_back(std::move(r));
            continue;
        }
        std::vector<ReturnPoint> kept;
        for (const auto& pt : r.points())
            if ((!c.from || !(pt.date < *c.from)) && (!c.to || !(*c.to < pt.date))) kept.push_back(pt);
        out.emplace_back(r.ticker(), std::move(kept));
    }
    return out;
}

AlignedPanel load_panel(const RunConfig& c) {
    const auto returns = load_returns(c);
    return align_panel(returns);
}

SegmentSpec make_segments(const RunConfig& c, const AlignedPanel& panel) {
    switch (c.segment_rule) {
        case SegmentRule::bimonthly:
            return bimonthly_segments(c.from.value_or(panel.dates().front()),
                                      c.to.value_or(panel.dates().back()));
        case SegmentRule::fixed_days:
            return fixed_day_segments(panel, c.segment_days);
        case SegmentRule::file: {
            std::ifstream in(c.segment_file);
            if (!in) throw UsageError("cannot open segment file " + c.segment_file.string());
            return read_segment_file(in);
        }
    }
    throw UsageError("unknown segment rule");
}

ClusterParams cluster_params(const RunConfig& c) {
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    return {c.alpha, c.sign, c.delta, c.linkage, c.cut_height};
}

PipelineResult run_pipeline(const RunConfig& c) {
    auto panel = load_panel(c);
    auto spec = make_segments(c, panel);
    const auto panels = segment_panel(panel, spec);
    auto analyses = analyze_segments(panels, cluster_params(c));
    std::vector<Clustering> clusterings;
    for (const auto& a : analyses) clusterings.push_back(a.clustering);
    auto graph = build_tgc(clusterings);
    return {std::move(panel), std::move(spec), std::move(analyses), std::move(clusterings),
            std::move(graph)};
}

std::vector<fs::path> cmd_diagnose(const RunConfig& c) {
    const auto series = load_returns(c);
    struct Job {
        std::size_t series;
        std::string window;
        std::vector<double> values;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto pts = series[s].points();
        if (pts.empty()) continue;
        if (!c.by_year) {
            jobs.push_back({s, format_date(pts.front().date) + ".." + format_date(pts.back().date),
                            series[s].values()});
            continue;
        }
        for (std::size_t i = 0; i < pts.size();) {
            const auto year = pts[i].date.year();
            Job job{s, std::to_string(static_cast<int>(year)), {}};
            for (; i < pts.size() && pts[i].date.year() == year; ++i) job.values.push_back(pts[i].value);
            jobs.push_back(std::move(job));
        }
    }

    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
    std::vector<std::optional<DiagnosticRow>> rows(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& job = jobs[i];
        const auto len = job.values.size();
        if (len < kMinSegmentDates) continue;
        if (std::all_of(job.values.begin(), job.values.end(),
                        [&](double v) { return v == job.values.front(); }))
            continue;
        const int lag = c.lag ? *c.lag : default_lag(len);
        if (lag < 1 || static_cast<std::size_t>(lag) >= len) continue;
        rows[i] = DiagnosticRow{series[job.series].ticker(), job.window, ljung_box(job.values, lag)};
    }
    std::vector<DiagnosticRow> kept;
    for (auto& r : rows)
        if (r) kept.push_back(std::move(*r));
    if (kept.empty()) throw DataError("no series long enough for the Ljung-Box test");

    const auto out = prepare_out(c) / "ljung_box.csv";
    auto f = open_text(out, config_hash(c));
    write_diagnostic_csv(f, kept);
    return {out};
}

std::vector<fs::path> cmd_cluster(const RunConfig& c) {
    const auto result = run_pipeline(c);
    const auto dir = prepare_out(c);
    const auto hash = config_hash(c);
    std::vector<fs::path> written;
    const auto segs = result.segments.segments();
    auto summary = open_text(dir / "cluster_summary.txt", hash);
    for (std::size_t i = 0; i < result.analyses.size(); ++i) {
        const auto& a = result.analyses[i];
        const auto index = std::to_string(i + 1);
        auto j = clustering_json(a.clustering, segs[i]);
        j["config_hash"] = hash;
        j["n"] = a.thresholds.n;
        j["c_alpha"] = a.thresholds.c_alpha;
        j["delta"] = a.thresholds.delta;
        j["excluded_constant"] = std::vector<std::string>(a.correlations.excluded().begin(),
                                                          a.correlations.excluded().end());
        const auto seg_path = dir / ("segment_" + index + ".json");
        write_json(seg_path, j);
        written.push_back(seg_path);

        const auto dend_path = dir / ("dendrogram_" + index + ".csv");
        auto dend = open_text(dend_path, hash);
        write_dendrogram_csv(dend, a.dendrogram);
        written.push_back(dend_path);

        summary << "segment " << index << " [" << format_date(segs[i].start) << ", "
                << format_date(segs[i].end) << "] n=" << a.thresholds.n
                << " delta=" << format_double(a.thresholds.delta) << " clusters:";
        for (const auto& cl : a.clustering.clusters) summary << ' ' << cl.size();
        summary << " outliers: " << a.clustering.outliers.size() << '\n';
    }
    written.push_back(dir / "cluster_summary.txt");
    return written;
}

std::vector<fs::path> cmd_graph(const RunConfig& c) {
    const auto result = run_pipeline(c);
    const auto dir = prepare_out(c);
    const auto hash = config_hash(c);
    auto j = tgc_json(result.graph, result.segments.segments());
    j["config_hash"] = hash;
    write_json(dir / "tgc.json", j);
    auto dot = open_text(dir / "tgc.dot", hash, "//");
    write_tgc_dot(dot, result.graph, result.segments.segments());
    return {dir / "tgc.json", dir / "tgc.dot"};
}

std::vector<fs::path> cmd_paths(const RunConfig& c) {
    const auto ctx = graph_context(c);
    const auto stripped = strip_isolated(ctx.graph);
    const auto paths = k_heaviest_paths(stripped, c.k);
    const auto dir = prepare_out(c);
    const auto hash = config_hash(c);
    {
        auto txt = open_text(dir / "paths.txt", hash);
        if (paths.empty()) txt << "no clusters\n";
        for (const auto& p : paths) txt << path_line(p, stripped) << '\n';
    }
    write_json(dir / "paths.json",
               {{"config_hash", hash}, {"k", c.k}, {"paths", paths_json(paths, stripped)}});
    return {dir / "paths.txt", dir / "paths.json"};
}

std::vector<fs::path> cmd_trace(const RunConfig& c) {
    if (c.stock.empty()) throw UsageError("trace needs --stock TICKER");
    const auto ctx = graph_context(c);
    const auto trace = trace_stock(ctx.graph, c.stock);
    const auto dir = prepare_out(c);
    const auto hash = config_hash(c);
    const auto csv_path = dir / ("trace_" + c.stock + ".csv");
    {
        auto csv = open_text(csv_path, hash);
        write_trace_csv(csv, trace, ctx.graph, ctx.segments);
    }
    auto j = trace_json(trace, ctx.graph, ctx.segments);
    j["config_hash"] = hash;
    const auto json_path = dir / ("trace_" + c.stock + ".json");
    write_json(json_path, j);
    return {csv_path, json_path};
}

std::vector<fs::path> cmd_cover(const RunConfig& c) {
    const auto ctx = graph_context(c);
    const auto cover = stock_cover(strip_isolated(ctx.graph), ctx.tickers, c.include_outliers);
    const auto dir = prepare_out(c);
    const auto hash = config_hash(c);
    {
        auto txt = open_text(dir / "cover.txt", hash);
        write_cover_text(txt, cover);
    }
    auto j = cover_json(cover);
    j["config_hash"] = hash;
    write_json(dir / "cover.json", j);
    return {dir / "cover.txt", dir / "cover.json"};
}

std::vector<fs::path> cmd_synth(const RunConfig& c, const SynthSpec& spec) {
    const auto panel = generate_factor_panel(spec);
    const auto dir = prepare_out(c);
    std::vector<fs::path> written;
    for (const auto& p : panel.prices) {
        const auto path = dir / (p.ticker() + ".csv");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write " + path.string());
        write_price_csv(out, p);
        written.push_back(path);
    }
    const auto labels = dir / "labels.txt";
    std::ofstream out(labels, std::ios::binary);
    out << "ticker,group\n";
    for (const auto& [t, g] : panel.labels) out << t << ',' << g << '\n';
    written.push_back(labels);
    return written;
}

}  // namespace tgclust
