#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgclust/cluster.hpp"
#include "tgclust/combinat.hpp"
#include "tgclust/graph.hpp"
#include "tgclust/ingest.hpp"
#include "tgclust/stats.hpp"

namespace tgclust {

using json = nlohmann::json;

// {segment, start, end, clusters: [[...]], outliers: [...]}
json clustering_json(const Clustering& c, const Segment& seg);
Clustering clustering_from_json(const json& j);

// step,left,right,height; leaves are named, internal nodes are "#<id>".
void write_dendrogram_csv(std::ostream& out, const Dendrogram& d);

// {m, segments, vertices: [{id, kind, members}], edges: [{from, to, weight}]}
json tgc_json(const TemporalGraph& g, std::span<const Segment> segments);

struct LoadedGraph {
    TemporalGraph graph;
    std::vector<Segment> segments;
};
LoadedGraph tgc_from_json(const json& j);

// One rank=same subgraph per segment, outlier pools as dashed boxes,
// edge labels carrying the weights.
void write_tgc_dot(std::ostream& out, const TemporalGraph& g, std::span<const Segment> segments);

// "i.j --w--> k.l --w--> ...  (total=W)"
std::string path_line(const WeightedPath& p, const TemporalGraph& g);
json paths_json(std::span<const WeightedPath> paths, const TemporalGraph& g);

void write_cover_text(std::ostream& out, const CoverResult& c);
json cover_json(const CoverResult& c);

// segment,start,end,location,members
void write_trace_csv(std::ostream& out, const TraceResult& t, const TemporalGraph& g,
                     std::span<const Segment> segments);
json trace_json(const TraceResult& t, const TemporalGraph& g, std::span<const Segment> segments);

struct DiagnosticRow {
    std::string ticker;
    std::string window;
    LjungBoxResult result;
};

// ticker,lb_statistic,lag,p_value,significant,window
void write_diagnostic_csv(std::ostream& out, std::span<const DiagnosticRow> rows);

// Shortest decimal text that round-trips.
std::string format_double(double v);

}  // namespace tgclust
