#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tgclust/cluster.hpp"
#include "tgclust/combinat.hpp"
#include "tgclust/graph.hpp"
#include "tgclust/ingest.hpp"
#include "tgclust/report.hpp"
#include "tgclust/synth.hpp"

namespace tgclust {

enum class SegmentRule { bimonthly, fixed_days, file };

// Analysis settings shared by all subcommands.
struct RunConfig {
    std::filesystem::path data_dir;
    std::vector<std::string> tickers;  // empty: every file in data_dir
    std::optional<Date> from;
    std::optional<Date> to;
    SegmentRule segment_rule = SegmentRule::bimonthly;
    std::size_t segment_days = 40;
    std::filesystem::path segment_file;
    double alpha = 0.05;
    std::optional<double> delta;
    Sign sign = Sign::positive;
    Linkage linkage = Linkage::complete;
    std::optional<double> cut_height;
    std::optional<int> lag;
    ReturnMode returns = ReturnMode::simple;
    std::size_t k = 3;
    std::string stock;
    bool include_outliers = false;
    bool by_year = false;  // diagnose per calendar year
    std::uint64_t seed = 42;
    std::filesystem::path graph_file;  // read a cached TGC instead of recomputing
    std::filesystem::path out_dir = ".";
};

// Analysis fields keyed by flag name; out_dir and graph_file are locations,
// not settings, and are left out.
json config_to_json(const RunConfig& c);

// Applies the keys present in `j` on top of `base`.
RunConfig config_from_json(const json& j, RunConfig base = {});

// FNV-1a 64 of the canonical config JSON, as 16 hex digits.
std::string config_hash(const RunConfig& c);

// "bimonthly", "days:N" or "file:PATH".
void parse_segment_rule(const std::string& text, RunConfig& c);
std::string segment_rule_text(const RunConfig& c);

// Per-ticker returns restricted to [from, to], sorted by ticker.
std::vector<ReturnSeries> load_returns(const RunConfig& c);

AlignedPanel load_panel(const RunConfig& c);

SegmentSpec make_segments(const RunConfig& c, const AlignedPanel& panel);

struct PipelineResult {
    AlignedPanel panel;
    SegmentSpec segments;
    std::vector<SegmentAnalysis> analyses;
    std::vector<Clustering> clusterings;
    TemporalGraph graph;
};

ClusterParams cluster_params(const RunConfig& c);

PipelineResult run_pipeline(const RunConfig& c);

// Subcommands; each writes into c.out_dir and returns the files written.
std::vector<std::filesystem::path> cmd_diagnose(const RunConfig& c);
std::vector<std::filesystem::path> cmd_cluster(const RunConfig& c);
std::vector<std::filesystem::path> cmd_graph(const RunConfig& c);
std::vector<std::filesystem::path> cmd_paths(const RunConfig& c);
std::vector<std::filesystem::path> cmd_trace(const RunConfig& c);
std::vector<std::filesystem::path> cmd_cover(const RunConfig& c);
std::vector<std::filesystem::path> cmd_synth(const RunConfig& c, const SynthSpec& spec);

}  // namespace tgclust
