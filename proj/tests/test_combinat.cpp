#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tgclust/combinat.hpp"
#include "tgclust/error.hpp"
#include "tgclust/report.hpp"

using namespace tgclust;

namespace {

TemporalGraph graph_of(std::vector<std::vector<TickerSet>> segments) {
    std::vector<Clustering> cs;
    for (std::size_t i = 0; i < segments.size(); ++i)
        cs.push_back(Clustering{static_cast<int>(i) + 1, segments[i], {}});
    return strip_isolated(build_tgc(cs));
}

long recomputed_weight(const TemporalGraph& g, const WeightedPath& p) {
    long w = 0;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
        bool found = false;
        for (auto e : g.out_edges(*g.find(p.vertices[i - 1])))
            if (g.edges()[e].to == p.vertices[i]) {
                w += g.edges()[e].weight;
                found = true;
            }
        if (!found) return -1;
    }
    return w;
}

bool hits_every_cluster(const TemporalGraph& g, const CoverResult& r) {
    const TickerSet picked(r.cover.begin(), r.cover.end());
    for (const auto& v : g.vertices()) {
        if (v.kind != VertexKind::cluster) continue;
        if (std::none_of(v.members.begin(), v.members.end(), [&](const auto& t) { return picked.count(t); }))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("k_heaviest_paths examples") {
    SUBCASE("fan-out of two") {
        // A1 = 1.1; B1, B2 = 2.1, 2.2 with overlaps 3 and 1.
        const auto g = graph_of({{{"a", "b", "c", "d"}}, {{"a", "b", "c", "x"}, {"d", "y"}}});
        const auto p = k_heaviest_paths(g, 2);
        REQUIRE(p.size() == 2);
        CHECK(p[0].vertices == std::vector<VertexId>{{1, 1}, {2, 1}});
        CHECK(p[0].weight == 3);
        CHECK(p[1].vertices == std::vector<VertexId>{{1, 1}, {2, 2}});
        CHECK(p[1].weight == 1);
    }
    SUBCASE("single vertex") {
        const auto g = graph_of({{{"a", "b"}}});
        const auto p = k_heaviest_paths(g, 1);
        REQUIRE(p.size() == 1);
        CHECK(p[0].vertices.size() == 1);
        CHECK(p[0].weight == 0);
    }
    SUBCASE("diamond") {
        // S -> X (2), S -> Y (2), X -> T (1), Y -> T (3)
        const auto g = graph_of({{{"s1", "s2", "s3", "s4"}},
                                 {{"s1", "s2", "t1"}, {"s3", "s4", "t2", "t3", "t4"}},
                                 {{"t1", "t2", "t3", "t4"}}});
        const auto p = k_heaviest_paths(g, 1);
        REQUIRE(p.size() == 1);
        CHECK(p[0].weight == 5);
        CHECK(p[0].vertices == std::vector<VertexId>{{1, 1}, {2, 2}, {3, 1}});
        CHECK(k_heaviest_paths(g, 10).size() == 2);
    }
    SUBCASE("paths may start after the first segment") {
        const auto g = graph_of({{{"a", "b"}}, {{"a", "b"}, {"c", "d"}}, {{"c", "d", "a"}}});
        const auto p = k_heaviest_paths(g, 5);
        REQUIRE(p.size() == 2);
        CHECK(p[0].vertices.front() == VertexId{1, 1});
        CHECK(p[1].vertices.front() == VertexId{2, 2});
    }
    SUBCASE("empty graph and bad input") {
        const auto empty = strip_isolated(build_tgc(std::vector<Clustering>{Clustering{1, {}, {"A"}}}));
        CHECK(k_heaviest_paths(empty, 3).empty());
        CHECK_THROWS_AS(k_heaviest_paths(empty, 0), UsageError);
        const auto pooled = build_tgc(std::vector<Clustering>{Clustering{1, {{"A", "B"}}, {"C"}}});
        CHECK_THROWS_AS(k_heaviest_paths(pooled, 1), std::invalid_argument);
    }
}

TEST_CASE("k_heaviest_paths matches brute-force enumeration") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = strip_isolated(oracle::random_weighted_tgc(rng, 5, 4, 9));
        const auto all = oracle::all_paths_ranked(g);
        std::vector<WeightedPath> previous;
        for (std::size_t k = 1; k <= 6; ++k) {
            const auto got = k_heaviest_paths(g, k);
            const std::vector<WeightedPath> want(all.begin(), all.begin() + std::min(k, all.size()));
            CHECK(got == want);
            // The result for k is a prefix of the result for k + 1.
            CHECK(std::equal(previous.begin(), previous.end(), got.begin()));
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(recomputed_weight(g, got[i]) == got[i].weight);
                if (i > 0) CHECK(got[i - 1].weight >= got[i].weight);
            }
            previous = got;
        }
    }
}

TEST_CASE("path report formats") {
    const auto g = graph_of({{{"a", "b", "c"}}, {{"a", "b", "c", "d"}}, {{"c", "d"}}});
    const auto p = k_heaviest_paths(g, 1);
    REQUIRE(p.size() == 1);
    CHECK(path_line(p[0], g) == "1.1 --3--> 2.1 --2--> 3.1  (total=5)");
    const auto j = paths_json(p, g);
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("weight") == 5);
    CHECK(j[0].at("edge_weights") == json::array({3, 2}));
    CHECK(j[0].at("vertices")[0].at("members") == json::array({"a", "b", "c"}));
}

TEST_CASE("trace_stock examples") {
    SUBCASE("in a cluster every segment") {
        const auto g = build_tgc(std::vector<Clustering>{Clustering{1, {{"A", "B"}}, {}}, Clustering{2, {{"A", "C"}}, {"B"}},
                                                         Clustering{3, {{"A", "B"}}, {"C"}}});
        const auto t = trace_stock(g, "A");
        REQUIRE(t.runs.size() == 1);
        CHECK(t.runs[0].size() == 3);
        for (const auto& s : t.statuses) CHECK(s.kind == LocationKind::cluster);
    }
    SUBCASE("always in the outlier pool") {
        std::vector<Clustering> cs;
        for (int i = 1; i <= 4; ++i) cs.push_back(Clustering{i, {{"A", "B"}}, {"G"}});
        const auto t = trace_stock(build_tgc(cs), "G");
        CHECK(t.runs.empty());
        REQUIRE(t.statuses.size() == 4);
        for (const auto& s : t.statuses) CHECK(s.kind == LocationKind::outlier_pool);
    }
    SUBCASE("clusters in segments 1-3 and 6-7") {
        std::vector<Clustering> cs;
        for (int i = 1; i <= 7; ++i) {
            const bool in = i <= 3 || i >= 6;
            cs.push_back(in ? Clustering{i, {{"B", "C"}, {"A", "Z"}}, {}} : Clustering{i, {{"B", "C"}}, {"A", "Z"}});
        }
        const auto t = trace_stock(build_tgc(cs), "A");
        REQUIRE(t.runs.size() == 2);
        CHECK(t.runs[0].size() == 3);
        CHECK(t.runs[1].size() == 2);
        CHECK(t.runs[1][0] == VertexId{6, 2});
        CHECK(t.statuses[3].kind == LocationKind::outlier_pool);
    }
    SUBCASE("absent segments and unknown tickers") {
        const auto g = build_tgc(std::vector<Clustering>{Clustering{1, {{"A", "B"}}, {}}, Clustering{2, {{"C", "D"}}, {}}});
        const auto t = trace_stock(g, "A");
        CHECK(t.statuses[1].kind == LocationKind::absent);
        CHECK_THROWS_WITH_AS(trace_stock(g, "Q"), doctest::Contains("known tickers: A, B, C, D"), DataError);
    }
}

TEST_CASE("trace runs always contain the ticker") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> tickers;
        const auto g = oracle::random_trajectory_tgc(rng, 1 + static_cast<int>(rng() % 7), 12, 3, tickers);
        for (const auto& t : tickers) {
            const auto r = trace_stock(g, t);
            CHECK(r.statuses.size() == static_cast<std::size_t>(g.segments()));
            std::size_t in_runs = 0;
            for (const auto& run : r.runs) {
                for (std::size_t i = 0; i < run.size(); ++i) {
                    CHECK(g.vertex(*g.find(run[i])).members.count(t) == 1);
                    if (i > 0) CHECK(run[i].segment == run[i - 1].segment + 1);
                }
                in_runs += run.size();
            }
            CHECK(in_runs == static_cast<std::size_t>(std::count_if(
                                 r.statuses.begin(), r.statuses.end(),
                                 [](const SegmentStatus& s) { return s.kind == LocationKind::cluster; })));
        }
    }
}

TEST_CASE("stock_cover examples") {
    SUBCASE("one cluster") {
        const auto g = graph_of({{{"A", "B"}}});
        const std::vector<std::string> pi{"A", "B"};
        const auto r = stock_cover(g, pi);
        CHECK(r.cover == std::vector<std::string>{"A"});
    }
    SUBCASE("chain of pairs") {
        const auto g = graph_of({{{"A", "B"}, {"C", "D"}}, {{"B", "C"}}});
        const std::vector<std::string> pi{"A", "B", "C", "D"};
        const auto r = stock_cover(g, pi);
        CHECK(r.cover == std::vector<std::string>{"B", "C"});
        CHECK(r.covered.at("B").size() == 2);
        CHECK(r.covered.at("C").size() == 1);
    }
    SUBCASE("three segments break the half bound") {
        const auto g = graph_of({{{"A", "B"}}, {{"B", "C"}}, {{"A", "C"}}});
        const std::vector<std::string> pi{"A", "B", "C"};
        const auto r = stock_cover(g, pi);
        CHECK(r.cover == std::vector<std::string>{"A", "B"});
        CHECK(r.ratio() == doctest::Approx(2.0 / 3.0));
        CHECK(r.exceeds_half_bound());
    }
    SUBCASE("include_outliers lists never-clustered tickers") {
        const auto g = graph_of({{{"A", "B"}}});
        const std::vector<std::string> pi{"A", "B", "C", "D"};
        const auto r = stock_cover(g, pi, true);
        CHECK(r.cover == std::vector<std::string>{"A"});
        CHECK(r.uncovered_outliers == std::vector<std::string>{"C", "D"});
        CHECK(r.ratio() == 0.25);
        CHECK(stock_cover(g, pi, false).uncovered_outliers.empty());
    }
    SUBCASE("members outside the universe") {
        const auto g = graph_of({{{"A", "B"}}});
        const std::vector<std::string> pi{"A"};
        CHECK_THROWS_AS(stock_cover(g, pi), DataError);
    }
    SUBCASE("report formats") {
        const auto g = graph_of({{{"A", "B"}}, {{"B", "C"}}, {{"A", "C"}}});
        const std::vector<std::string> pi{"A", "B", "C"};
        const auto r = stock_cover(g, pi);
        std::ostringstream text;
        write_cover_text(text, r);
        CHECK(text.str().find("A") != std::string::npos);
        const auto j = cover_json(r);
        CHECK(j.at("cover") == json::array({"A", "B"}));
        CHECK(j.at("exceeds_half_bound") == true);
    }
}

TEST_CASE("stock_cover hits every cluster on random graphs") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::string> tickers;
        const auto g = strip_isolated(
            oracle::random_trajectory_tgc(rng, 1 + static_cast<int>(rng() % 6), 4 + static_cast<int>(rng() % 20), 4, tickers));
        const auto r = stock_cover(g, tickers);
        CHECK(hits_every_cluster(g, r));
        CHECK(r.cover.size() <= g.cluster_count());
        // Every pick was credited with at least one cluster, and credits partition the clusters.
        std::size_t credited = 0;
        for (const auto& t : r.cover) {
            REQUIRE(r.covered.count(t) == 1);
            CHECK_FALSE(r.covered.at(t).empty());
            for (const auto& id : r.covered.at(t)) CHECK(g.vertex(*g.find(id)).members.count(t) == 1);
            credited += r.covered.at(t).size();
        }
        CHECK(credited == g.cluster_count());
        CHECK(stock_cover(g, tickers).cover == r.cover);
    }
}
