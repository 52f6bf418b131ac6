#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgclust/graph.hpp"

namespace tgclust {

struct WeightedPath {
    std::vector<VertexId> vertices;
    long weight = 0;

    bool operator==(const WeightedPath&) const = default;
};

// Ranking used everywhere for paths: heavier first, then the
// lexicographically smaller vertex-id sequence.
bool heavier_first(const WeightedPath& a, const WeightedPath& b);

// The k heaviest paths that start at a cluster with no incoming edge and
// end at a cluster with no outgoing edge. A dummy sink joined by weight-1
// edges closes every path during the search; it is not reported and its
// edge is not counted in the weight. Per-vertex top-k prefix lists are kept
// segment by segment. Requires a graph without outlier pools.
std::vector<WeightedPath> k_heaviest_paths(const TemporalGraph& g, std::size_t k);

enum class LocationKind { cluster, outlier_pool, absent };

struct SegmentStatus {
    int segment = 0;
    LocationKind kind = LocationKind::absent;
    std::optional<VertexId> vertex;  // set for cluster
};

struct TraceResult {
    std::string ticker;
    std::vector<SegmentStatus> statuses;        // one per segment
    std::vector<std::vector<VertexId>> runs;    // maximal consecutive cluster stretches
};

// Where a stock sits in every segment. Throws DataError for a ticker that
// appears in no vertex.
TraceResult trace_stock(const TemporalGraph& g, const std::string& ticker);

struct CoverResult {
    std::vector<std::string> cover;                          // selection order
    std::map<std::string, std::vector<VertexId>> covered;    // clusters credited per pick
    std::vector<std::string> uncovered_outliers;             // filled with include_outliers
    std::size_t universe = 0;                                // |Pi|
    std::size_t clusters = 0;

    // |cover| / |Pi| for the greedy picks, and whether it breaks the 1/2 bound.
    double ratio() const;
    bool exceeds_half_bound() const;
};

// Greedy hitting set: repeatedly picks the ticker in the most uncovered
// clusters (ties to the smallest ticker). Every cluster member must be in
// `universe`. With include_outliers, tickers of `universe` that are in no
// cluster are appended to uncovered_outliers.
CoverResult stock_cover(const TemporalGraph& g, std::span<const std::string> universe,
                        bool include_outliers = false);

const char* to_string(LocationKind k);

}  // namespace tgclust
