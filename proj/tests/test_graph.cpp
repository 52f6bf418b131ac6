#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tgclust/error.hpp"
#include "tgclust/graph.hpp"
#include "tgclust/report.hpp"

using namespace tgclust;

namespace {

Clustering seg(int i, std::vector<TickerSet> clusters, TickerSet outliers = {}) {
    return Clustering{i, std::move(clusters), std::move(outliers)};
}

std::size_t recount(const TemporalGraph& g, const Edge& e) {
    const auto& a = g.vertex(*g.find(e.from)).members;
    const auto& b = g.vertex(*g.find(e.to)).members;
    std::size_t n = 0;
    for (const auto& t : a) n += b.count(t);
    return n;
}

std::vector<Segment> dummy_segments(int m) {
    std::vector<Segment> s;
    const Date base{std::chrono::year{2008}, std::chrono::June, std::chrono::day{1}};
    for (int i = 0; i < m; ++i) s.push_back({add_days(base, 10 * i), add_days(base, 10 * i + 9)});
    return s;
}

}  // namespace

TEST_CASE("vertex ids") {
    CHECK(VertexId{3, 12}.label() == "3.12");
    CHECK(parse_vertex_id("3.12") == VertexId{3, 12});
    CHECK(parse_vertex_id("1.0") == VertexId{1, 0});
    CHECK_THROWS(parse_vertex_id("3"));
    CHECK_THROWS(parse_vertex_id("a.b"));
    CHECK_THROWS(parse_vertex_id("1.2x"));
    // Numeric ordering: 1.9 before 1.10.
    CHECK(VertexId{1, 9} < VertexId{1, 10});
}

TEST_CASE("build_tgc examples") {
    SUBCASE("one segment, no edges") {
        std::vector<Clustering> c{seg(1, {{"A", "B"}, {"C", "D"}}, {"E"})};
        const auto g = build_tgc(c);
        CHECK(g.segments() == 1);
        CHECK(g.cluster_count() == 2);
        CHECK(g.edges().empty());
        CHECK(g.vertices().size() == 3);
    }
    SUBCASE("overlapping clusters give one edge") {
        std::vector<Clustering> c{seg(1, {{"A", "B", "C"}}), seg(2, {{"B", "C", "D"}})};
        const auto g = build_tgc(c);
        REQUIRE(g.edges().size() == 1);
        CHECK(g.edges()[0].from == VertexId{1, 1});
        CHECK(g.edges()[0].to == VertexId{2, 1});
        CHECK(g.edges()[0].weight == 2);
    }
    SUBCASE("disjoint clusters give no edge") {
        std::vector<Clustering> c{seg(1, {{"A", "B"}}), seg(2, {{"C", "D"}})};
        CHECK(build_tgc(c).edges().empty());
    }
    SUBCASE("outlier pools never carry edges") {
        std::vector<Clustering> c{seg(1, {{"A", "B"}}, {"X", "Y"}), seg(2, {{"X", "Y"}}, {"A", "B"})};
        const auto g = build_tgc(c);
        CHECK(g.edges().empty());
        CHECK(g.has_outlier_pools());
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(build_tgc(std::vector<Clustering>{}), DataError);
        std::vector<Clustering> wrong{seg(2, {{"A", "B"}})};
        CHECK_THROWS_AS(build_tgc(wrong), DataError);
    }
}

TEST_CASE("TemporalGraph rejects malformed structure") {
    const Vertex a{{1, 1}, VertexKind::cluster, {"A", "B"}};
    const Vertex b{{2, 1}, VertexKind::cluster, {"B", "C"}};
    const Vertex c{{3, 1}, VertexKind::cluster, {"B", "D"}};
    CHECK_NOTHROW(TemporalGraph(2, {a, b}, {{{1, 1}, {2, 1}, 1}}));
    CHECK_THROWS_AS(TemporalGraph(2, {a, b}, {{{1, 1}, {2, 1}, 2}}), DataError);  // wrong weight
    CHECK_THROWS_AS(TemporalGraph(3, {a, b, c}, {{{1, 1}, {3, 1}, 1}}), DataError);  // skips a segment
    CHECK_THROWS_AS(TemporalGraph(2, {a, b}, {{{2, 1}, {1, 1}, 1}}), DataError);  // backwards
    CHECK_THROWS_AS(TemporalGraph(1, {a, {{1, 2}, VertexKind::cluster, {"B", "Z"}}}, {}),
                    DataError);  // shared member within a segment
    CHECK_THROWS_AS(TemporalGraph(1, {{{1, 1}, VertexKind::cluster, {"A"}}}, {}), DataError);
    CHECK_THROWS_AS(TemporalGraph(1, {a, a}, {}), DataError);
}

TEST_CASE("strip_isolated") {
    SUBCASE("drops a populated pool") {
        std::vector<Clustering> c{seg(1, {{"A", "B"}}, {"X"}), seg(2, {{"A", "B"}})};
        const auto g = build_tgc(c);
        const auto s = strip_isolated(g);
        CHECK_FALSE(s.has_outlier_pools());
        CHECK(s.cluster_count() == g.cluster_count());
        CHECK(s.edges().size() == g.edges().size());
        CHECK_FALSE(s.find({1, 0}).has_value());
    }
    SUBCASE("empty pools: cluster and edge sets unchanged") {
        std::vector<Clustering> c{seg(1, {{"A", "B"}, {"C", "D"}}), seg(2, {{"A", "C"}, {"B", "D"}})};
        const auto g = build_tgc(c);
        const auto s = strip_isolated(g);
        CHECK(s.vertices().size() == 4);
        CHECK(s.edges().size() == 4);
        for (std::size_t i = 0; i < s.edges().size(); ++i) CHECK(s.edges()[i].weight == g.edges()[i].weight);
    }
    SUBCASE("only outlier pools") {
        std::vector<Clustering> c{seg(1, {}, {"A", "B"}), seg(2, {}, {"A", "B"})};
        const auto s = strip_isolated(build_tgc(c));
        CHECK(s.vertices().empty());
        CHECK(s.edges().empty());
    }
}

TEST_CASE("edge weights equal recounted intersections on random graphs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> tickers;
        const auto g = oracle::random_trajectory_tgc(rng, 1 + static_cast<int>(rng() % 6), 30, 5, tickers);
        for (const auto& e : g.edges()) {
            CHECK(static_cast<std::size_t>(e.weight) == recount(g, e));
            CHECK(e.to.segment == e.from.segment + 1);
        }
        // Each stock lies in at most one vertex per segment.
        for (int s = 1; s <= g.segments(); ++s) {
            std::size_t total = 0;
            TickerSet seen;
            for (const auto& v : g.vertices())
                if (v.id.segment == s) {
                    total += v.members.size();
                    seen.insert(v.members.begin(), v.members.end());
                }
            CHECK(total == seen.size());
        }
    }
}

TEST_CASE("build_tgc is invariant under relabeling clusters within a segment") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Clustering> cs;
        const int m = 2 + static_cast<int>(rng() % 4);
        for (int i = 1; i <= m; ++i) {
            std::vector<TickerSet> clusters(1 + rng() % 4);
            TickerSet out;
            for (int t = 0; t < 16; ++t) {
                const auto slot = rng() % (clusters.size() + 1);
                (slot == clusters.size() ? out : clusters[slot]).insert("T" + std::to_string(t));
            }
            std::vector<TickerSet> kept;
            for (auto& c : clusters) {
                if (c.size() >= 2) kept.push_back(c);
                else out.insert(c.begin(), c.end());
            }
            cs.push_back(seg(i, kept, out));
        }
        auto shuffled = cs;
        for (auto& c : shuffled) std::shuffle(c.clusters.begin(), c.clusters.end(), rng);

        // Compare edges as (members, members, weight) triples.
        auto edge_set = [](const TemporalGraph& g) {
            std::vector<std::tuple<TickerSet, TickerSet, int>> out;
            for (const auto& e : g.edges())
                out.emplace_back(g.vertex(*g.find(e.from)).members, g.vertex(*g.find(e.to)).members, e.weight);
            std::sort(out.begin(), out.end());
            return out;
        };
        CHECK(edge_set(build_tgc(cs)) == edge_set(build_tgc(shuffled)));
    }
}

TEST_CASE("graph JSON round trip and DOT output") {
    std::vector<Clustering> c{seg(1, {{"A", "B", "C"}}, {"Z"}), seg(2, {{"B", "C"}, {"A", "D"}}),
                              seg(3, {{"A", "B", "C", "D"}}, {"Z"})};
    const auto g = build_tgc(c);
    const auto segments = dummy_segments(3);
    const auto j = tgc_json(g, segments);
    CHECK(j.at("m") == 3);
    const auto back = tgc_from_json(json::parse(j.dump()));
    CHECK(tgc_json(back.graph, back.segments) == j);
    REQUIRE(back.graph.edges().size() == g.edges().size());

    std::ostringstream dot;
    write_tgc_dot(dot, g, segments);
    const auto text = dot.str();
    CHECK(text.find("digraph") != std::string::npos);
    CHECK(text.find("rankdir=LR") != std::string::npos);
    CHECK(text.find("dashed") != std::string::npos);
    CHECK(text.find("label=\"2\"") != std::string::npos);
}
