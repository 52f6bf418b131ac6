#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tgclust/stats.hpp"

namespace tgclust {

using TickerSet = std::set<std::string>;

// G_A: the anchor plus every ticker whose correlation with it passes delta.
struct CorrelationGroup {
    std::string anchor;
    TickerSet members;
};

using GroupMap = std::map<std::string, CorrelationGroup>;

GroupMap correlation_groups(const CorrelationMatrix& corr, double delta, Sign sign);

// 1 - |a ∩ b| / |a ∪ b|; two empty sets are at distance 0.
template <class T>
double jaccard_distance(const std::set<T>& a, const std::set<T>& b) {
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    const std::size_t uni = a.size() + b.size() - common;
    if (uni == 0) return 0.0;
    return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

class DissimilarityMatrix {
public:
    DissimilarityMatrix(std::vector<std::string> tickers, std::vector<double> values);

    std::span<const std::string> tickers() const { return tickers_; }
    std::size_t size() const { return tickers_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

private:
    std::vector<std::string> tickers_;
    std::vector<double> values_;
};

// Jaccard distances between every pair of groups (rows in parallel).
DissimilarityMatrix dissimilarity_matrix(const GroupMap& groups);
DissimilarityMatrix dissimilarity_matrix_serial(const GroupMap& groups);

enum class Linkage { complete, average, single };

// Node ids follow the usual convention: leaves are 0..n-1 in ticker order,
// the cluster formed by merge s gets id n + s.
struct Merge {
    std::size_t left = 0;   // smaller id
    std::size_t right = 0;  // larger id
    double height = 0.0;
    std::size_t size = 0;   // leaves under the new node
};

class Dendrogram {
public:
    Dendrogram(std::vector<std::string> leaves, std::vector<Merge> merges);

    std::span<const std::string> leaves() const { return leaves_; }
    std::span<const Merge> merges() const { return merges_; }
    double max_height() const;

private:
    std::vector<std::string> leaves_;
    std::vector<Merge> merges_;
};

// Agglomerative clustering: repeatedly merges the closest pair of current
// clusters; equal distances go to the smallest (left, right) id pair.
Dendrogram hierarchical_cluster(const DissimilarityMatrix& m, Linkage linkage = Linkage::complete);

// Flat clusters: maximal subtrees whose merges all sit at or below the cut.
// Default cut is half the tallest merge.
std::vector<TickerSet> cut_mid_level(const Dendrogram& dend,
                                     std::optional<double> cut_height = {});

// One segment's clusters S_{i,j} (each of size >= 2, ordered by descending
// size, ties by smallest member) and its outlier pool Q_i.
struct Clustering {
    int segment = 0;  // 1-based
    std::vector<TickerSet> clusters;
    TickerSet outliers;
};

// Moves singletons into the outlier pool and orders the remaining clusters.
Clustering pool_outliers(std::vector<TickerSet> pre, int segment_index);

struct ClusterParams {
    double alpha = 0.05;
    Sign sign = Sign::positive;
    std::optional<double> delta;
    Linkage linkage = Linkage::complete;
    std::optional<double> cut_height;
};

// Everything computed for one segment.
struct SegmentAnalysis {
    SignificanceThresholds thresholds;
    CorrelationMatrix correlations;
    GroupMap groups;
    DissimilarityMatrix dissimilarity;
    Dendrogram dendrogram;
    Clustering clustering;
};

// Full per-segment clustering; constant columns land in the outlier pool.
SegmentAnalysis analyze_segment(const AlignedPanel& panel, int segment_index,
                                const ClusterParams& params);

// analyze_segment over every segment, segments processed in parallel.
std::vector<SegmentAnalysis> analyze_segments(std::span<const AlignedPanel> panels,
                                              const ClusterParams& params);
std::vector<SegmentAnalysis> analyze_segments_serial(std::span<const AlignedPanel> panels,
                                                     const ClusterParams& params);

const char* to_string(Linkage l);
Linkage parse_linkage(std::string_view s);

}  // namespace tgclust
