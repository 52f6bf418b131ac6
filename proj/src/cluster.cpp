#include "tgclust/cluster.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include "tgclust/error.hpp"

namespace tgclust {

GroupMap correlation_groups(const CorrelationMatrix& corr, double delta, Sign sign) {
    if (delta == 0.0) throw UsageError("delta must be non-zero");
    GroupMap groups;
    const auto tickers = corr.tickers();
    for (std::size_t a = 0; a < corr.size(); ++a) {
        CorrelationGroup g{tickers[a], {tickers[a]}};
        for (std::size_t x = 0; x < corr.size(); ++x) {
            if (x == a) continue;
            const double r = corr(a, x);
            if (sign == Sign::positive ? r > delta : r < delta) g.members.insert(tickers[x]);
        }
        groups.emplace(tickers[a], std::move(g));
    }
    return groups;
}

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> tickers,
                                         std::vector<double> values)
    : tickers_(std::move(tickers)), values_(std::move(values)) {
    const auto n = tickers_.size();
    if (values_.size() != n * n) throw DataError("dissimilarity matrix: wrong value count");
    for (std::size_t i = 0; i < n; ++i) {
        if (values_[i * n + i] != 0.0) throw DataError("dissimilarity matrix: non-zero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values_[i * n + j];
            if (v != values_[j * n + i] || v < 0.0 || v > 1.0)
                throw DataError("dissimilarity matrix: not symmetric or outside [0, 1]");
        }
    }
}

namespace {

std::vector<const CorrelationGroup*> group_list(const GroupMap& groups,
                                                std::vector<std::string>& tickers) {
    if (groups.size() < 2) throw DataError("dissimilarity matrix: need at least 2 tickers");
    std::vector<const CorrelationGroup*> list;
    for (const auto& [ticker, g] : groups) {
        tickers.push_back(ticker);
        list.push_back(&g);
    }
    return list;
}

}  // namespace

DissimilarityMatrix dissimilarity_matrix(const GroupMap& groups) {
    std::vector<std::string> tickers;
    const auto list = group_list(groups, tickers);
    const auto n = static_cast<std::ptrdiff_t>(list.size());
    std::vector<double> values(n * n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::ptrdiff_t j = i + 1; j < n; ++j) {
            const double d = jaccard_distance(list[i]->members, list[j]->members);
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return DissimilarityMatrix(std::move(tickers), std::move(values));
}

DissimilarityMatrix dissimilarity_matrix_serial(const GroupMap& groups) {
    std::vector<std::string> tickers;
    const auto list = group_list(groups, tickers);
    const auto n = list.size();
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = jaccard_distance(list[i]->members, list[j]->members);
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return DissimilarityMatrix(std::move(tickers), std::move(values));
}

Dendrogram::Dendrogram(std::vector<std::string> leaves, std::vector<Merge> merges)
    : leaves_(std::move(leaves)), merges_(std::move(merges)) {
    if (!leaves_.empty() && merges_.size() != leaves_.size() - 1)
        throw DataError("dendrogram: expected " + std::to_string(leaves_.size() - 1) + " merges");
}

double Dendrogram::max_height() const {
    double h = 0.0;
    for (const auto& m : merges_) h = std::max(h, m.height);
    return h;
}

Dendrogram hierarchical_cluster(const DissimilarityMatrix& m, Linkage linkage) {
    const std::size_t n = m.size();
    std::vector<std::string> leaves(m.tickers().begin(), m.tickers().end());
    if (n < 2) return Dendrogram(std::move(leaves), {});

    // Slot s holds the current cluster with node id ids[s]; dist is indexed by slot.
    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = m(i, j);
    std::vector<std::size_t> ids(n), sizes(n, 1);
    std::vector<bool> active(n, true);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;

    std::vector<Merge> merges;
    merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t best_a = 0, best_b = 0;
        std::pair<std::size_t, std::size_t> best_key{};
        double best = std::numeric_limits<double>::infinity();
        bool found = false;
        for (std::size_t a = 0; a < n; ++a) {
            if (!active[a]) continue;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!active[b]) continue;
                const double d = dist[a * n + b];
                const std::pair<std::size_t, std::size_t> key = std::minmax(ids[a], ids[b]);
                if (!found || d < best || (d == best && key < best_key)) {
                    found = true;
                    best = d;
                    best_key = key;
                    best_a = a;
                    best_b = b;
                }
            }
        }

        const std::size_t na = sizes[best_a], nb = sizes[best_b];
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == best_a || k == best_b) continue;
            const double da = dist[best_a * n + k], db = dist[best_b * n + k];
            double d = 0.0;
            switch (linkage) {
                case Linkage::complete: d = std::max(da, db); break;
                case Linkage::single: d = std::min(da, db); break;
                case Linkage::average:
                    d = (static_cast<double>(na) * da + static_cast<double>(nb) * db) /
                        static_cast<double>(na + nb);
                    break;
            }
            dist[best_a * n + k] = d;
            dist[k * n + best_a] = d;
        }
        merges.push_back({best_key.first, best_key.second, best, na + nb});
        ids[best_a] = n + step;
        sizes[best_a] = na + nb;
        active[best_b] = false;
    }
    return Dendrogram(std::move(leaves), std::move(merges));
}

std::vector<TickerSet> cut_mid_level(const Dendrogram& dend, std::optional<double> cut_height) {
    const auto leaves = dend.leaves();
    const auto merges = dend.merges();
    const std::size_t n = leaves.size();
    const std::size_t nodes = n + merges.size();
    const double cut = cut_height ? *cut_height : dend.max_height() / 2.0;

    std::vector<bool> intact(nodes, true);
    std::vector<std::size_t> parent(nodes, nodes);
    for (std::size_t s = 0; s < merges.size(); ++s) {
        const auto& mg = merges[s];
        const std::size_t id = n + s;
        intact[id] = mg.height <= cut && intact[mg.left] && intact[mg.right];
        parent[mg.left] = id;
        parent[mg.right] = id;
    }

    // Leaves of each node, built bottom-up.
    std::vector<std::vector<std::size_t>> under(nodes);
    for (std::size_t i = 0; i < n; ++i) under[i] = {i};
    for (std::size_t s = 0; s < merges.size(); ++s) {
        auto& dst = under[n + s];
        dst = under[merges[s].left];
        dst.insert(dst.end(), under[merges[s].right].begin(), under[merges[s].right].end());
    }

    std::vector<TickerSet> clusters;
    for (std::size_t id = 0; id < nodes; ++id) {
        if (!intact[id]) continue;
        if (parent[id] != nodes && intact[parent[id]]) continue;
        TickerSet members;
        for (auto leaf : under[id]) members.insert(leaves[leaf]);
        clusters.push_back(std::move(members));
    }
    return clusters;
}

Clustering pool_outliers(std::vector<TickerSet> pre, int segment_index) {
    Clustering out;
    out.segment = segment_index;
    for (auto& c : pre) {
        if (c.size() < 2)
            out.outliers.insert(c.begin(), c.end());
        else
            out.clusters.push_back(std::move(c));
    }
    std::sort(out.clusters.begin(), out.clusters.end(), [](const TickerSet& a, const TickerSet& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return *a.begin() < *b.begin();
    });
    return out;
}

namespace {

SegmentAnalysis analyze(const AlignedPanel& panel, int segment_index, const ClusterParams& params,
                        bool parallel) {
    try {
        auto th = significance_thresholds(panel.rows(), params.alpha, params.sign, params.delta);
        auto corr = parallel ? correlation_matrix(panel) : correlation_matrix_serial(panel);
        auto groups = correlation_groups(corr, th.delta, params.sign);
        auto dis = parallel ? dissimilarity_matrix(groups) : dissimilarity_matrix_serial(groups);
        auto dend = hierarchical_cluster(dis, params.linkage);
        auto clustering = pool_outliers(cut_mid_level(dend, params.cut_height), segment_index);
        clustering.outliers.insert(corr.excluded().begin(), corr.excluded().end());
        return SegmentAnalysis{th, std::move(corr), std::move(groups), std::move(dis),
                               std::move(dend), std::move(clustering)};
    } catch (const DataError& e) {
        throw DataError("segment " + std::to_string(segment_index) + ": " + e.what());
    }
}

}  // namespace

SegmentAnalysis analyze_segment(const AlignedPanel& panel, int segment_index,
                                const ClusterParams& params) {
    return analyze(panel, segment_index, params, true);
}

std::vector<SegmentAnalysis> analyze_segments(std::span<const AlignedPanel> panels,
                                              const ClusterParams& params) {
    const auto m = static_cast<std::ptrdiff_t>(panels.size());
    std::vector<std::optional<SegmentAnalysis>> slots(m);
    std::vector<std::exception_ptr> errors(m);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        try {
            slots[i].emplace(analyze(panels[i], static_cast<int>(i) + 1, params, true));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    std::vector<SegmentAnalysis> out;
    out.reserve(m);
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

std::vector<SegmentAnalysis> analyze_segments_serial(std::span<const AlignedPanel> panels,
                                                     const ClusterParams& params) {
    std::vector<SegmentAnalysis> out;
    out.reserve(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i)
        out.push_back(analyze(panels[i], static_cast<int>(i) + 1, params, false));
    return out;
}

const char* to_string(Linkage l) {
    switch (l) {
        case Linkage::complete: return "complete";
        case Linkage::average: return "average";
        case Linkage::single: return "single";
    }
    return "?";
}

Linkage parse_linkage(std::string_view s) {
    if (s == "complete") return Linkage::complete;
    if (s == "average") return Linkage::average;
    if (s == "single") return Linkage::single;
    throw UsageError("unknown linkage '" + std::string(s) + "'");
}

}  // namespace tgclust
