#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgclust/cluster.hpp"

namespace tgclust {

enum class VertexKind { cluster, outlier_pool, sink };

// "i.j": segment i (1-based), cluster j (1-based); outlier pools use j = 0.
struct VertexId {
    int segment = 0;
    int index = 0;

    auto operator<=>(const VertexId&) const = default;
    std::string label() const;
};

VertexId parse_vertex_id(std::string_view label);

struct Vertex {
    VertexId id;
    VertexKind kind = VertexKind::cluster;
    TickerSet members;
};

struct Edge {
    VertexId from;
    VertexId to;
    int weight = 0;
};

// Temporal Graph of Clusters: a layered DAG whose edges join clusters of
// consecutive segments, weighted by the size of their intersection.
class TemporalGraph {
public:
    // Validates structure: edges go from segment i to i + 1 between cluster
    // vertices, weights equal member intersections, clusters have >= 2
    // members and are disjoint within a segment.
    TemporalGraph(int segments, std::vector<Vertex> vertices, std::vector<Edge> edges);

    int segments() const { return segments_; }
    std::span<const Vertex> vertices() const { return vertices_; }
    std::span<const Edge> edges() const { return edges_; }

    std::optional<std::size_t> find(const VertexId& id) const;
    const Vertex& vertex(std::size_t i) const { return vertices_[i]; }

    // Edge indices leaving / entering vertex i.
    std::span<const std::size_t> out_edges(std::size_t i) const { return out_[i]; }
    std::span<const std::size_t> in_edges(std::size_t i) const { return in_[i]; }

    std::size_t cluster_count() const;
    bool has_outlier_pools() const;

private:
    int segments_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

// Vertices S_{i,j} in clustering order plus one (possibly empty) Q_i per
// segment; edges wherever consecutive clusters intersect.
TemporalGraph build_tgc(std::span<const Clustering> clusterings);

TemporalGraph strip_isolated(const TemporalGraph& g);

const char* to_string(VertexKind k);

}  // namespace tgclust
