#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace oracle {

using namespace tgclust;

std::vector<WeightedPath> all_paths_ranked(const TemporalGraph& g) {
    std::vector<WeightedPath> out;
    std::vector<VertexId> stack;
    const auto dfs = [&](auto&& self, std::size_t v, long weight) -> void {
        stack.push_back(g.vertex(v).id);
        if (g.out_edges(v).empty()) out.push_back({stack, weight});
        for (auto e : g.out_edges(v)) {
            const auto& edge = g.edges()[e];
            self(self, *g.find(edge.to), weight + edge.weight);
        }
        stack.pop_back();
    };
    for (std::size_t v = 0; v < g.vertices().size(); ++v)
        if (g.vertex(v).kind == VertexKind::cluster && g.in_edges(v).empty()) dfs(dfs, v, 0);
    std::sort(out.begin(), out.end(), [](const WeightedPath& a, const WeightedPath& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.vertices < b.vertices;
    });
    return out;
}

TemporalGraph random_weighted_tgc(std::mt19937_64& rng, int max_segments, int max_clusters,
                                  int max_weight) {
    std::uniform_int_distribution<int> seg_count(1, max_segments);
    std::uniform_int_distribution<int> cl_count(1, max_clusters);
    std::uniform_int_distribution<int> weight(1, max_weight);
    std::bernoulli_distribution has_edge(0.5);

    const int m = seg_count(rng);
    std::vector<std::vector<TickerSet>> clusters(m);
    int next = 0;
    const auto fresh = [&] { return "T" + std::to_string(next++); };
    for (int i = 0; i < m; ++i) {
        clusters[i].resize(cl_count(rng));
        for (auto& c : clusters[i]) {
            c.insert(fresh());
            c.insert(fresh());
        }
    }
    for (int i = 0; i + 1 < m; ++i)
        for (auto& a : clusters[i])
            for (auto& b : clusters[i + 1])
                if (has_edge(rng))
                    for (int w = weight(rng); w > 0; --w) {
                        const auto t = fresh();
                        a.insert(t);
                        b.insert(t);
                    }
    std::vector<Clustering> cs;
    for (int i = 0; i < m; ++i) cs.push_back(pool_outliers(clusters[i], i + 1));
    return build_tgc(cs);
}

TemporalGraph random_trajectory_tgc(std::mt19937_64& rng, int segments, int stocks,
                                    int max_clusters, std::vector<std::string>& tickers) {
    tickers.clear();
    for (int s = 0; s < stocks; ++s) tickers.push_back("S" + std::to_string(100 + s));
    std::uniform_int_distribution<int> slot(0, max_clusters);  // 0 = outlier
    std::vector<Clustering> cs;
    for (int i = 0; i < segments; ++i) {
        std::vector<TickerSet> pre(max_clusters + 1);
        TickerSet outliers;
        for (const auto& t : tickers) {
            const int k = slot(rng);
            if (k == 0)
                outliers.insert(t);
            else
                pre[k].insert(t);
        }
        std::vector<TickerSet> flat;
        for (const auto& t : outliers) flat.push_back({t});
        for (auto& c : pre)
            if (!c.empty()) flat.push_back(c);
        cs.push_back(pool_outliers(flat, i + 1));
    }
    return build_tgc(cs);
}

double rand_index(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
    std::vector<std::string> items;
    for (const auto& [k, v] : a) items.push_back(k);
    std::size_t agree = 0, total = 0;
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            const bool same_a = a.at(items[i]) == a.at(items[j]);
            const bool same_b = b.at(items[i]) == b.at(items[j]);
            agree += same_a == same_b;
            ++total;
        }
    return total == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(total);
}

std::map<std::string, int> labels_of(const Clustering& c) {
    std::map<std::string, int> labels;
    int next = 0;
    for (const auto& cl : c.clusters) {
        for (const auto& t : cl) labels[t] = next;
        ++next;
    }
    for (const auto& t : c.outliers) labels[t] = next++;
    return labels;
}

double ks_uniform_distance(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = std::clamp(sample[i], 0.0, 1.0);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double normal(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace oracle
