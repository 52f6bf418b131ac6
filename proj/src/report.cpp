#include "tgclust/report.hpp"

#include <charconv>
#include <ostream>

#include "tgclust/error.hpp"

namespace tgclust {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

namespace {

json ticker_array(const TickerSet& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

std::string joined(const TickerSet& s, const char* sep) {
    std::string out;
    for (const auto& t : s) out += (out.empty() ? "" : sep) + t;
    return out;
}

json segment_json(std::size_t index, const Segment& s) {
    return {{"index", index}, {"start", format_date(s.start)}, {"end", format_date(s.end)}};
}

VertexKind parse_kind(const std::string& s) {
    if (s == "cluster") return VertexKind::cluster;
    if (s == "outlier_pool") return VertexKind::outlier_pool;
    throw DataError("graph json: unknown vertex kind '" + s + "'");
}

}  // namespace

json clustering_json(const Clustering& c, const Segment& seg) {
    json clusters = json::array();
    for (const auto& cl : c.clusters) clusters.push_back(ticker_array(cl));
    return {{"segment", c.segment},
            {"start", format_date(seg.start)},
            {"end", format_date(seg.end)},
            {"clusters", clusters},
            {"outliers", ticker_array(c.outliers)}};
}

Clustering clustering_from_json(const json& j) {
    try {
        Clustering c;
        c.segment = j.at("segment").get<int>();
        for (const auto& cl : j.at("clusters")) {
            const auto v = cl.get<std::vector<std::string>>();
            c.clusters.emplace_back(v.begin(), v.end());
        }
        const auto out = j.at("outliers").get<std::vector<std::string>>();
        c.outliers.insert(out.begin(), out.end());
        return c;
    } catch (const json::exception& e) {
        throw DataError(std::string("clustering json: ") + e.what());
    }
}

void write_dendrogram_csv(std::ostream& out, const Dendrogram& d) {
    const auto leaves = d.leaves();
    const auto name = [&](std::size_t id) {
        return id < leaves.size() ? leaves[id] : "#" + std::to_string(id);
    };
    out << "step,left,right,height\n";
    const auto merges = d.merges();
    for (std::size_t s = 0; s < merges.size(); ++s)
        out << s + 1 << ',' << name(merges[s].left) << ',' << name(merges[s].right) << ','
            << format_double(merges[s].height) << '\n';
}

json tgc_json(const TemporalGraph& g, std::span<const Segment> segments) {
    json segs = json::array();
    for (std::size_t i = 0; i < segments.size(); ++i) segs.push_back(segment_json(i + 1, segments[i]));
    json vertices = json::array();
    for (const auto& v : g.vertices())
        vertices.push_back(
            {{"id", v.id.label()}, {"kind", to_string(v.kind)}, {"members", ticker_array(v.members)}});
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"from", e.from.label()}, {"to", e.to.label()}, {"weight", e.weight}});
    return {{"m", g.segments()}, {"segments", segs}, {"vertices", vertices}, {"edges", edges}};
}

LoadedGraph tgc_from_json(const json& j) {
    try {
        std::vector<Vertex> vertices;
        for (const auto& v : j.at("vertices")) {
            const auto members = v.at("members").get<std::vector<std::string>>();
            vertices.push_back({parse_vertex_id(v.at("id").get<std::string>()),
                                parse_kind(v.at("kind").get<std::string>()),
                                TickerSet(members.begin(), members.end())});
        }
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges"))
            edges.push_back({parse_vertex_id(e.at("from").get<std::string>()),
                             parse_vertex_id(e.at("to").get<std::string>()),
                             e.at("weight").get<int>()});
        std::vector<Segment> segments;
        if (j.contains("segments"))
            for (const auto& s : j.at("segments"))
                segments.push_back({parse_date(s.at("start").get<std::string>()),
                                    parse_date(s.at("end").get<std::string>())});
        return {TemporalGraph(j.at("m").get<int>(), std::move(vertices), std::move(edges)),
                std::move(segments)};
    } catch (const json::exception& e) {
        throw DataError(std::string("graph json: ") + e.what());
    }
}

void write_tgc_dot(std::ostream& out, const TemporalGraph& g, std::span<const Segment> segments) {
    out << "digraph tgc {\n"
        << "  rankdir=LR;\n"
        << "  node [shape=box];\n";
    for (int s = 1; s <= g.segments(); ++s) {
        out << "  subgraph segment_" << s << " {\n"
            << "    rank=same;\n";
        std::string header = "tau" + std::to_string(s);
        if (static_cast<std::size_t>(s) <= segments.size())
            header += "\\n" + format_date(segments[s - 1].start) + "\\n" +
                      format_date(segments[s - 1].end);
        out << "    \"tau" << s << "\" [shape=plaintext, label=\"" << header << "\"];\n";
        for (const auto& v : g.vertices()) {
            if (v.id.segment != s) continue;
            if (v.kind == VertexKind::outlier_pool)
                out << "    \"" << v.id.label() << "\" [style=dashed, label=\"Q" << s << "\\n"
                    << joined(v.members, "\\n") << "\"];\n";
            else
                out << "    \"" << v.id.label() << "\" [label=\"" << v.id.label() << "\\n"
                    << joined(v.members, "\\n") << "\"];\n";
        }
        out << "  }\n";
    }
    for (const auto& e : g.edges())
        out << "  \"" << e.from.label() << "\" -> \"" << e.to.label() << "\" [label=\"" << e.weight
            << "\"];\n";
    out << "}\n";
}

std::string path_line(const WeightedPath& p, const TemporalGraph& g) {
    std::string line;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        if (i > 0) {
            int w = 0;
            for (auto e : g.out_edges(*g.find(p.vertices[i - 1])))
                if (g.edges()[e].to == p.vertices[i]) w = g.edges()[e].weight;
            line += " --" + std::to_string(w) + "--> ";
        }
        line += p.vertices[i].label();
    }
    return line + "  (total=" + std::to_string(p.weight) + ")";
}

json paths_json(std::span<const WeightedPath> paths, const TemporalGraph& g) {
    json arr = json::array();
    for (std::size_t r = 0; r < paths.size(); ++r) {
        const auto& p = paths[r];
        json verts = json::array();
        for (const auto& id : p.vertices)
            verts.push_back({{"id", id.label()}, {"members", ticker_array(g.vertex(*g.find(id)).members)}});
        json weights = json::array();
        for (std::size_t i = 1; i < p.vertices.size(); ++i)
            for (auto e : g.out_edges(*g.find(p.vertices[i - 1])))
                if (g.edges()[e].to == p.vertices[i]) weights.push_back(g.edges()[e].weight);
        arr.push_back({{"rank", r + 1}, {"weight", p.weight}, {"vertices", verts}, {"edge_weights", weights}});
    }
    return arr;
}

void write_cover_text(std::ostream& out, const CoverResult& c) {
    out << "cover (" << c.cover.size() << " of " << c.universe << " tickers, " << c.clusters
        << " clusters):";
    for (const auto& t : c.cover) out << ' ' << t;
    out << '\n';
    for (const auto& t : c.cover) {
        out << "  " << t << ':';
        for (const auto& id : c.covered.at(t)) out << ' ' << id.label();
        out << '\n';
    }
    if (!c.uncovered_outliers.empty()) {
        out << "not in any cluster:";
        for (const auto& t : c.uncovered_outliers) out << ' ' << t;
        out << '\n';
    }
    out << "ratio |cover|/|tickers| = " << format_double(c.ratio())
        << (c.exceeds_half_bound() ? "  (exceeds the 1/2 bound)" : "") << '\n';
}

json cover_json(const CoverResult& c) {
    json covered = json::object();
    for (const auto& t : c.cover) {
        json ids = json::array();
        for (const auto& id : c.covered.at(t)) ids.push_back(id.label());
        covered[t] = ids;
    }
    return {{"cover", c.cover},
            {"covered", covered},
            {"uncovered_outliers", c.uncovered_outliers},
            {"tickers", c.universe},
            {"clusters", c.clusters},
            {"ratio", c.ratio()},
            {"exceeds_half_bound", c.exceeds_half_bound()}};
}

namespace {

struct TraceRow {
    std::string start, end, location, members;
};

TraceRow trace_row(const SegmentStatus& st, const std::string& ticker, const TemporalGraph& g,
                   std::span<const Segment> segments) {
    TraceRow row;
    if (static_cast<std::size_t>(st.segment) <= segments.size()) {
        row.start = format_date(segments[st.segment - 1].start);
        row.end = format_date(segments[st.segment - 1].end);
    }
    switch (st.kind) {
        case LocationKind::cluster:
            row.location = st.vertex->label();
            row.members = joined(g.vertex(*g.find(*st.vertex)).members, " ");
            break;
        case LocationKind::outlier_pool:
            row.location = "outlier_pool";
            row.members = ticker;
            break;
        case LocationKind::absent:
            row.location = "absent";
            break;
    }
    return row;
}

}  // namespace

void write_trace_csv(std::ostream& out, const TraceResult& t, const TemporalGraph& g,
                     std::span<const Segment> segments) {
    out << "segment,start,end,location,members\n";
    for (const auto& st : t.statuses) {
        const auto row = trace_row(st, t.ticker, g, segments);
        out << st.segment << ',' << row.start << ',' << row.end << ',' << row.location << ','
            << row.members << '\n';
    }
}

json trace_json(const TraceResult& t, const TemporalGraph& g, std::span<const Segment> segments) {
    json statuses = json::array();
    for (const auto& st : t.statuses) {
        const auto row = trace_row(st, t.ticker, g, segments);
        json members = json::array();
        if (st.kind == LocationKind::cluster)
            members = ticker_array(g.vertex(*g.find(*st.vertex)).members);
        statuses.push_back({{"segment", st.segment},
                            {"start", row.start},
                            {"end", row.end},
                            {"location", row.location},
                            {"members", members}});
    }
    json runs = json::array();
    for (const auto& run : t.runs) {
        json ids = json::array();
        for (const auto& id : run) ids.push_back(id.label());
        runs.push_back(ids);
    }
    return {{"ticker", t.ticker}, {"statuses", statuses}, {"runs", runs}};
}

void write_diagnostic_csv(std::ostream& out, std::span<const DiagnosticRow> rows) {
    out << "ticker,lb_statistic,lag,p_value,significant,window\n";
    for (const auto& r : rows)
        out << r.ticker << ',' << format_double(r.result.statistic) << ',' << r.result.lag << ','
            << format_double(r.result.p_value) << ',' << (r.result.p_value < 0.05 ? 1 : 0) << ','
            << r.window << '\n';
}

}  // namespace tgclust
