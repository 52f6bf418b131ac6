#include "tgclust/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "tgclust/error.hpp"

namespace tgclust {

std::string VertexId::label() const {
    return std::to_string(segment) + "." + std::to_string(index);
}

VertexId parse_vertex_id(std::string_view label) {
    const auto dot = label.find('.');
    VertexId id;
    const auto bad = [&] { return DataError("invalid vertex id '" + std::string(label) + "'"); };
    if (dot == std::string_view::npos) throw bad();
    auto [p1, e1] = std::from_chars(label.data(), label.data() + dot, id.segment);
    auto [p2, e2] = std::from_chars(label.data() + dot + 1, label.data() + label.size(), id.index);
    if (e1 != std::errc{} || e2 != std::errc{} || p1 != label.data() + dot ||
        p2 != label.data() + label.size())
        throw bad();
    return id;
}

namespace {

std::size_t intersection_size(const TickerSet& a, const TickerSet& b) {
    std::size_t n = 0;
    for (const auto& t : a) n += b.count(t);
    return n;
}

}  // namespace

TemporalGraph::TemporalGraph(int segments, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : segments_(segments), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (segments_ < 0) throw DataError("graph: negative segment count");
    std::sort(vertices_.begin(), vertices_.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });

    std::map<int, TickerSet> seen_in_segment;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (i > 0 && vertices_[i - 1].id == v.id)
            throw DataError("graph: duplicate vertex " + v.id.label());
        if (v.id.segment < 1 || v.id.segment > segments_)
            throw DataError("graph: vertex " + v.id.label() + " outside segments 1.." +
                            std::to_string(segments_));
        if (v.kind == VertexKind::sink) throw DataError("graph: sink vertices are not stored");
        if ((v.kind == VertexKind::outlier_pool) != (v.id.index == 0))
            throw DataError("graph: vertex " + v.id.label() +
                            " must use index 0 iff it is an outlier pool");
        if (v.kind == VertexKind::cluster && v.members.size() < 2)
            throw DataError("graph: cluster " + v.id.label() + " has fewer than 2 members");
        auto& seen = seen_in_segment[v.id.segment];
        for (const auto& t : v.members)
            if (!seen.insert(t).second)
                throw DataError("graph: " + t + " appears twice in segment " +
                                std::to_string(v.id.segment));
    }

    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (e > 0 && edges_[e - 1].from == edge.from && edges_[e - 1].to == edge.to)
            throw DataError("graph: duplicate edge " + edge.from.label() + "->" + edge.to.label());
        const auto from = find(edge.from), to = find(edge.to);
        if (!from || !to)
            throw DataError("graph: edge " + edge.from.label() + "->" + edge.to.label() +
                            " references a missing vertex");
        if (vertices_[*from].kind != VertexKind::cluster || vertices_[*to].kind != VertexKind::cluster)
            throw DataError("graph: edges may only join cluster vertices");
        if (edge.to.segment != edge.from.segment + 1)
            throw DataError("graph: edge " + edge.from.label() + "->" + edge.to.label() +
                            " does not join consecutive segments");
        const auto common = intersection_size(vertices_[*from].members, vertices_[*to].members);
        if (edge.weight < 1 || static_cast<std::size_t>(edge.weight) != common)
            throw DataError("graph: edge " + edge.from.label() + "->" + edge.to.label() +
                            " weight does not equal the member intersection");
        out_[*from].push_back(e);
        in_[*to].push_back(e);
    }
}

std::optional<std::size_t> TemporalGraph::find(const VertexId& id) const {
    const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                                     [](const Vertex& v, const VertexId& x) { return v.id < x; });
    if (it == vertices_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t TemporalGraph::cluster_count() const {
    return std::count_if(vertices_.begin(), vertices_.end(),
                         [](const Vertex& v) { return v.kind == VertexKind::cluster; });
}

bool TemporalGraph::has_outlier_pools() const {
    return std::any_of(vertices_.begin(), vertices_.end(),
                       [](const Vertex& v) { return v.kind == VertexKind::outlier_pool; });
}

TemporalGraph build_tgc(std::span<const Clustering> clusterings) {
    if (clusterings.empty()) throw DataError("build_tgc: no clusterings");
    const int m = static_cast<int>(clusterings.size());
    std::vector<Vertex> vertices;
    for (int i = 0; i < m; ++i) {
        const auto& c = clusterings[i];
        if (c.segment != i + 1)
            throw DataError("build_tgc: clustering " + std::to_string(i + 1) +
                            " carries segment index " + std::to_string(c.segment));
        vertices.push_back({{i + 1, 0}, VertexKind::outlier_pool, c.outliers});
        for (std::size_t j = 0; j < c.clusters.size(); ++j)
            vertices.push_back({{i + 1, static_cast<int>(j) + 1}, VertexKind::cluster, c.clusters[j]});
    }

    std::vector<Edge> edges;
    for (int i = 0; i + 1 < m; ++i) {
        const auto& cur = clusterings[i].clusters;
        const auto& next = clusterings[i + 1].clusters;
        for (std::size_t j = 0; j < cur.size(); ++j)
            for (std::size_t k = 0; k < next.size(); ++k)
                if (const auto w = intersection_size(cur[j], next[k]); w > 0)
                    edges.push_back({{i + 1, static_cast<int>(j) + 1},
                                     {i + 2, static_cast<int>(k) + 1},
                                     static_cast<int>(w)});
    }
    return TemporalGraph(m, std::move(vertices), std::move(edges));
}

TemporalGraph strip_isolated(const TemporalGraph& g) {
    std::vector<Vertex> kept;
    for (const auto& v : g.vertices())
        if (v.kind == VertexKind::cluster) kept.push_back(v);
    return TemporalGraph(g.segments(), std::move(kept),
                         std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

const char* to_string(VertexKind k) {
    switch (k) {
        case VertexKind::cluster: return "cluster";
        case VertexKind::outlier_pool: return "outlier_pool";
        case VertexKind::sink: return "sink";
    }
    return "?";
}

}  // namespace tgclust
