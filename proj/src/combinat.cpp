#include "tgclust/combinat.hpp"

#include <algorithm>
#include <set>

#include "tgclust/error.hpp"

namespace tgclust {

bool heavier_first(const WeightedPath& a, const WeightedPath& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.vertices < b.vertices;
}

namespace {

void keep_top(std::vector<WeightedPath>& paths, std::size_t k) {
    std::sort(paths.begin(), paths.end(), heavier_first);
    if (paths.size() > k) paths.resize(k);
}

}  // namespace

std::vector<WeightedPath> k_heaviest_paths(const TemporalGraph& g, std::size_t k) {
    if (k == 0) throw UsageError("k must be positive");
    if (g.has_outlier_pools())
        throw std::invalid_argument("k_heaviest_paths: strip outlier pools first");

    const auto n = g.vertices().size();
    // best[v]: top-k prefixes ending at v. Vertices are sorted by segment,
    // so every predecessor is final before v is visited.
    std::vector<std::vector<WeightedPath>> best(n);
    // Paths reaching the sink, weighed without the unit sink edge.
    std::vector<WeightedPath> at_sink;

    for (std::size_t v = 0; v < n; ++v) {
        const auto id = g.vertex(v).id;
        auto& here = best[v];
        if (g.in_edges(v).empty()) {
            here.push_back({{id}, 0});
        } else {
            for (auto e : g.in_edges(v)) {
                const auto& edge = g.edges()[e];
                for (const auto& prefix : best[*g.find(edge.from)]) {
                    WeightedPath p = prefix;
                    p.vertices.push_back(id);
                    p.weight += edge.weight;
                    here.push_back(std::move(p));
                }
            }
            keep_top(here, k);
        }
        if (g.out_edges(v).empty()) at_sink.insert(at_sink.end(), here.begin(), here.end());
    }
    keep_top(at_sink, k);
    return at_sink;
}

TraceResult trace_stock(const TemporalGraph& g, const std::string& ticker) {
    std::set<std::string> known;
    for (const auto& v : g.vertices()) known.insert(v.members.begin(), v.members.end());
    if (!known.contains(ticker)) {
        std::string list;
        for (const auto& t : known) list += (list.empty() ? "" : ", ") + t;
        throw DataError("unknown ticker '" + ticker + "'; known tickers: " + list);
    }

    TraceResult r;
    r.ticker = ticker;
    for (int s = 1; s <= g.segments(); ++s) r.statuses.push_back({s, LocationKind::absent, {}});
    for (const auto& v : g.vertices()) {
        if (!v.members.contains(ticker)) continue;
        auto& st = r.statuses[v.id.segment - 1];
        if (v.kind == VertexKind::cluster) {
            st.kind = LocationKind::cluster;
            st.vertex = v.id;
        } else {
            st.kind = LocationKind::outlier_pool;
        }
    }

    std::vector<VertexId> run;
    for (const auto& st : r.statuses) {
        if (st.kind == LocationKind::cluster) {
            run.push_back(*st.vertex);
        } else if (!run.empty()) {
            r.runs.push_back(std::move(run));
            run.clear();
        }
    }
    if (!run.empty()) r.runs.push_back(std::move(run));
    return r;
}

double CoverResult::ratio() const {
    return universe == 0 ? 0.0 : static_cast<double>(cover.size()) / static_cast<double>(universe);
}

bool CoverResult::exceeds_half_bound() const { return 2 * cover.size() > universe; }

CoverResult stock_cover(const TemporalGraph& g, std::span<const std::string> universe,
                        bool include_outliers) {
    std::vector<std::string> tickers(universe.begin(), universe.end());
    std::sort(tickers.begin(), tickers.end());
    tickers.erase(std::unique(tickers.begin(), tickers.end()), tickers.end());

    std::vector<const Vertex*> clusters;
    std::set<std::string> in_some_cluster;
    for (const auto& v : g.vertices()) {
        if (v.kind != VertexKind::cluster) continue;
        clusters.push_back(&v);
        for (const auto& t : v.members) {
            if (!std::binary_search(tickers.begin(), tickers.end(), t))
                throw DataError("stock_cover: cluster " + v.id.label() + " member " + t +
                                " is not in the ticker set");
            in_some_cluster.insert(t);
        }
    }

    CoverResult r;
    r.universe = tickers.size();
    r.clusters = clusters.size();

    // Incidence rows: clusters (by position) containing each ticker.
    std::vector<std::vector<std::size_t>> rows(tickers.size());
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (const auto& t : clusters[c]->members)
            rows[std::lower_bound(tickers.begin(), tickers.end(), t) - tickers.begin()].push_back(c);

    std::vector<bool> covered(clusters.size(), false);
    std::vector<bool> picked(tickers.size(), false);
    std::size_t remaining = clusters.size();
    while (remaining > 0) {
        std::size_t best = tickers.size(), best_count = 0;
        for (std::size_t t = 0; t < tickers.size(); ++t) {
            if (picked[t]) continue;
            const auto count = static_cast<std::size_t>(std::count_if(
                rows[t].begin(), rows[t].end(), [&](std::size_t c) { return !covered[c]; }));
            if (count > best_count) {
                best = t;
                best_count = count;
            }
        }
        picked[best] = true;
        auto& credited = r.covered[tickers[best]];
        for (auto c : rows[best]) {
            if (covered[c]) continue;
            covered[c] = true;
            credited.push_back(clusters[c]->id);
            --remaining;
        }
        r.cover.push_back(tickers[best]);
    }

    if (include_outliers)
        for (const auto& t : tickers)
            if (!in_some_cluster.contains(t)) r.uncovered_outliers.push_back(t);
    return r;
}

const char* to_string(LocationKind k) {
    switch (k) {
        case LocationKind::cluster: return "cluster";
        case LocationKind::outlier_pool: return "outlier_pool";
        case LocationKind::absent: return "absent";
    }
    return "?";
}

}  // namespace tgclust
