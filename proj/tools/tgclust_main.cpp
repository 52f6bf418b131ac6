// tgclust: cluster stock returns per time segment, build the temporal graph
// of clusters and query it (heaviest paths, stock trace, stock cover).

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tgclust/error.hpp"
#include "tgclust/pipeline.hpp"

using namespace tgclust;

namespace {

struct Flags {
    std::string config, data, from, to, segment, linkage, returns, stock, out, graph;
    std::vector<std::string> tickers;
    double alpha = 0.05, delta = 0.0, cut_height = 0.0;
    int lag = 0;
    std::size_t k = 3;
    std::uint64_t seed = 42;
    bool negative = false, include_outliers = false, by_year = false;
};

struct Options {
    CLI::Option *config, *data, *tickers, *from, *to, *segment, *alpha, *delta, *negative, *linkage,
        *cut_height, *lag, *returns, *k, *stock, *include_outliers, *by_year, *seed, *out, *graph;
};

Options add_common(CLI::App* app, Flags& f) {
    Options o{};
    o.config = app->add_option("--config", f.config, "JSON config file; flags override it");
    o.data = app->add_option("--data", f.data, "directory of <TICKER>.csv price files");
    o.tickers = app->add_option("--tickers", f.tickers, "restrict to these tickers")->delimiter(',');
    o.from = app->add_option("--from", f.from, "period start YYYY-MM-DD");
    o.to = app->add_option("--to", f.to, "period end YYYY-MM-DD");
    o.segment = app->add_option("--segment", f.segment, "bimonthly | days:N | file:PATH");
    o.alpha = app->add_option("--alpha", f.alpha, "significance level for c_alpha");
    o.delta = app->add_option("--delta", f.delta, "explicit clustering threshold");
    o.negative = app->add_flag("--negative", f.negative, "cluster negatively correlated stocks");
    o.linkage = app->add_option("--linkage", f.linkage, "complete | average | single");
    o.cut_height = app->add_option("--cut-height", f.cut_height, "dendrogram cut height");
    o.lag = app->add_option("--lag", f.lag, "Ljung-Box lag (default round(ln n))");
    o.returns = app->add_option("--returns", f.returns, "simple | log");
    o.k = app->add_option("--k", f.k, "number of heaviest paths");
    o.stock = app->add_option("--stock", f.stock, "ticker to trace");
    o.include_outliers = app->add_flag("--include-outliers", f.include_outliers,
                                       "list tickers outside every cluster with the cover");
    o.by_year = app->add_flag("--by-year", f.by_year, "diagnose per calendar year");
    o.seed = app->add_option("--seed", f.seed, "seed for synthetic data");
    o.out = app->add_option("--out", f.out, "output directory");
    o.graph = app->add_option("--graph", f.graph, "read a cached tgc.json instead of recomputing");
    return o;
}

RunConfig build_config(const Flags& f, const Options& o) {
    RunConfig c;
    if (o.config->count() > 0) {
        std::ifstream in(f.config);
        if (!in) throw UsageError("cannot open config " + f.config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError("config " + f.config + ": " + e.what());
        }
        c = config_from_json(j, c);
    }
    if (o.data->count()) c.data_dir = f.data;
    if (o.tickers->count()) c.tickers = f.tickers;
    try {
        if (o.from->count()) c.from = parse_date(f.from);
        if (o.to->count()) c.to = parse_date(f.to);
    } catch (const DataError& e) {
        throw UsageError(e.what());
    }
    if (o.segment->count()) parse_segment_rule(f.segment, c);
    if (o.alpha->count()) c.alpha = f.alpha;
    if (o.delta->count()) c.delta = f.delta;
    if (o.negative->count()) c.sign = Sign::negative;
    if (o.linkage->count()) c.linkage = parse_linkage(f.linkage);
    if (o.cut_height->count()) c.cut_height = f.cut_height;
    if (o.lag->count()) c.lag = f.lag;
    if (o.returns->count()) {
        if (f.returns != "simple" && f.returns != "log") throw UsageError("--returns must be simple or log");
        c.returns = f.returns == "log" ? ReturnMode::log : ReturnMode::simple;
    }
    if (o.k->count()) c.k = f.k;
    if (o.stock->count()) c.stock = f.stock;
    if (o.include_outliers->count()) c.include_outliers = true;
    if (o.by_year->count()) c.by_year = true;
    if (o.seed->count()) c.seed = f.seed;
    if (o.out->count()) c.out_dir = f.out;
    if (o.graph->count()) c.graph_file = f.graph;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal graph of clusters for stock return series"};
    app.require_subcommand(1);

    Flags flags;
    std::map<std::string, Options> options;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"diagnose", "Ljung-Box serial correlation report per ticker"},
        {"cluster", "per-segment clusterings and dendrograms"},
        {"graph", "temporal graph of clusters as JSON and DOT"},
        {"paths", "k heaviest paths"},
        {"trace", "segment-by-segment location of one stock"},
        {"cover", "greedy stock cover of all clusters"},
        {"synth", "write a seeded common-factor synthetic panel"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        subs[name] = app.add_subcommand(name, help);
        options[name] = add_common(subs[name], flags);
    }
    SynthSpec synth;
    subs["synth"]->add_option("--groups", synth.groups, "number of factor groups");
    subs["synth"]->add_option("--per-group", synth.per_group, "stocks per group");
    subs["synth"]->add_option("--noise", synth.noise, "extra independent stocks");
    subs["synth"]->add_option("--rho", synth.rho, "within-group return correlation");
    subs["synth"]->add_option("--days", synth.days, "number of daily returns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        for (const auto& [name, sub] : subs) {
            if (!sub->parsed()) continue;
            const auto config = build_config(flags, options[name]);
            if (name != "synth" && config.data_dir.empty() && config.graph_file.empty())
                throw UsageError("--data is required");
            std::vector<std::filesystem::path> written;
            if (name == "diagnose") written = cmd_diagnose(config);
            else if (name == "cluster") written = cmd_cluster(config);
            else if (name == "graph") written = cmd_graph(config);
            else if (name == "paths") written = cmd_paths(config);
            else if (name == "trace") written = cmd_trace(config);
            else if (name == "cover") written = cmd_cover(config);
            else if (name == "synth") {
                synth.seed = config.seed;
                written = cmd_synth(config, synth);
            }
            for (const auto& p : written) std::cout << p.string() << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
