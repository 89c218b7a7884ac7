#include "suitescore/cli.hpp"

#include <chrono>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "suitescore/ingest.hpp"
#include "suitescore/report.hpp"

namespace suitescore {

namespace {

struct Options {
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::string json_path;
    bool no_standardize = false;
    std::optional<int> resample_points;
    std::optional<double> variance_threshold;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool timing = false;

    std::vector<std::string> suites;
    std::vector<std::string> counters;
    std::string runtime;
    std::string out_dir;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig resolve_config(const Options& opt) {
    RunConfig config;
    if (!opt.config_file.empty()) config = load_config(opt.config_file);
    if (opt.seed) config.seed = *opt.seed;
    if (opt.no_standardize) config.standardize_for_clustering = false;
    if (opt.resample_points) config.resample_points = *opt.resample_points;
    if (opt.variance_threshold) config.variance_threshold = *opt.variance_threshold;
    try {
        validate_config(config);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return config;
}

class PhaseTimer {
public:
    explicit PhaseTimer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

    template <class Fn>
    auto run(const std::string& phase, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        auto result = fn();
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        sink_.emplace_back(phase, elapsed.count());
        return result;
    }

private:
    std::vector<std::pair<std::string, double>>& sink_;
};

enum class Command { Cluster, Trend, Coverage, Compare, Rank, Report };

struct Plan {
    bool cluster = false;
    bool trend = false;
    bool trend_required = false;  // fail instead of skipping when series are missing
    bool coverage = false;
    bool ranking = false;
    bool comparison = false;
};

Plan plan_for(Command cmd, const Options& opt) {
    Plan p;
    switch (cmd) {
        case Command::Cluster: p.cluster = true; break;
        case Command::Trend: p.trend = p.trend_required = true; break;
        case Command::Coverage: p.coverage = true; break;
        case Command::Rank: p.ranking = true; break;
        case Command::Compare:
            p.cluster = p.trend = p.coverage = true;
            p.comparison = true;
            break;
        case Command::Report:
            p.cluster = p.trend = p.coverage = true;
            p.ranking = !opt.runtime.empty();
            p.comparison = opt.suites.size() > 1;
            break;
    }
    if (!opt.counters.empty()) p.trend_required = p.trend;
    return p;
}

SuiteReport build_report(Command cmd, const Options& opt, const RunConfig& config) {
    const auto plan = plan_for(cmd, opt);
    SuiteReport report;
    report.config = config;
    std::vector<std::pair<std::string, double>> timing;
    PhaseTimer timer(timing);

    std::vector<SuiteDataset> datasets;
    for (const auto& dir : opt.suites)
        datasets.push_back(timer.run("load:" + dir, [&] { return load_suite(SuiteLayout::from_root(dir)); }));

    for (const auto& ds : datasets) {
        SuiteSection section;
        section.name = ds.suite_name;
        if (plan.cluster)
            section.cluster = timer.run("cluster:" + ds.suite_name, [&] { return cluster_score(ds.stats, config, opt.jobs); });
        if (plan.trend) {
            auto counters = opt.counters.empty() ? ds.complete_trend_counters() : opt.counters;
            if (counters.empty() && plan.trend_required)
                throw Error(ErrorKind::Completeness,
                            "suite '" + ds.suite_name + "' has no counter with a series for every benchmark");
            if (!counters.empty())
                section.trend = timer.run("trend:" + ds.suite_name,
                                          [&] { return trend_score(ds, counters, config, opt.jobs); });
        }
        if (plan.coverage)
            section.coverage = timer.run("coverage:" + ds.suite_name, [&] { return coverage_score(ds.stats, config); });
        if (plan.ranking) {
            section.runtime_column = opt.runtime;
            section.ranking = timer.run("rank:" + ds.suite_name, [&] { return rank_counters(ds.stats, opt.runtime); });
        }
        report.suites.push_back(std::move(section));
    }
    if (plan.comparison) {
        std::vector<const SuiteDataset*> ptrs;
        for (const auto& ds : datasets) ptrs.push_back(&ds);
        report.comparison = timer.run("compare", [&] { return compare_coverage(ptrs, config); });
    }
    if (opt.timing) report.timing = std::move(timing);
    return report;
}

void print_error(std::ostream& err, const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what();
    if (e.line()) {
        err << " (line " << e.line();
        if (e.column()) err << ", column " << e.column();
        err << ")";
    }
    err << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scores the quality of benchmark suites from their execution statistics.", "suitescore"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--config", opt.config_file, "JSON run configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", opt.seed, "Random seed for k-means restarts");
    app.add_option("--json", opt.json_path, "Also write the JSON report to this path");
    app.add_flag("--no-standardize", opt.no_standardize, "Cluster on raw counter values");
    app.add_option("--resample-points", opt.resample_points, "Points on the percentile grid");
    app.add_option("--variance-threshold", opt.variance_threshold, "Variance fraction PCA must retain");
    app.add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--timing", opt.timing, "Record wall-clock time per phase in the report");

    Command cmd = Command::Cluster;
    auto add_cmd = [&](const char* name, const char* help, Command c) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&cmd, c] { cmd = c; });
        return sub;
    };
    auto* cluster = add_cmd("cluster-score", "Mean silhouette over k = 2..n-1 (lower = more diverse)", Command::Cluster);
    cluster->add_option("suite", opt.suites, "Suite directory")->required()->expected(1)->check(CLI::ExistingDirectory);

    auto* trend = add_cmd("trend-score", "Mean pairwise DTW distance of normalized counter traces", Command::Trend);
    trend->add_option("suite", opt.suites, "Suite directory")->required()->expected(1)->check(CLI::ExistingDirectory);
    trend->add_option("--counters", opt.counters, "Counters to score (default: all with complete series)")
        ->delimiter(',');

    auto* coverage = add_cmd("coverage-score", "Mean retained PCA variance of [0,1]-normalized stats", Command::Coverage);
    coverage->add_option("suite", opt.suites, "Suite directory")->required()->expected(1)->check(CLI::ExistingDirectory);

    auto* compare = add_cmd("compare", "All scores per suite; coverage under shared bounds", Command::Compare);
    compare->add_option("suites", opt.suites, "Suite directories")->required()->expected(2, -1)->check(CLI::ExistingDirectory);
    compare->add_option("--counters", opt.counters, "Counters for the trend score")->delimiter(',');

    auto* rank = add_cmd("rank", "Rank counters by standardized regression coefficient on runtime", Command::Rank);
    rank->add_option("suite", opt.suites, "Suite directory")->required()->expected(1)->check(CLI::ExistingDirectory);
    rank->add_option("--runtime", opt.runtime, "Column holding the execution time")->required();

    auto* report = add_cmd("report", "Everything, written to a directory with charts", Command::Report);
    report->add_option("suites", opt.suites, "Suite directories")->required()->expected(1, -1)->check(CLI::ExistingDirectory);
    report->add_option("--out", opt.out_dir, "Output directory")->required();
    report->add_option("--runtime", opt.runtime, "Column holding the execution time (enables ranking)");
    report->add_option("--counters", opt.counters, "Counters for the trend score")->delimiter(',');

    std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_tail.begin(), argv_tail.end());  // CLI11 consumes a reversed vector
    try {
        app.parse(argv_tail);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const auto config = resolve_config(opt);
        const auto built = build_report(cmd, opt, config);
        if (cmd == Command::Report) {
            emit_report(built, opt.out_dir);
            out << "wrote report to " << opt.out_dir << "\n";
        }
        out << render_text(built);
        if (!opt.json_path.empty()) write_text_file(opt.json_path, render_json(built));
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        print_error(err, e);
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace suitescore
