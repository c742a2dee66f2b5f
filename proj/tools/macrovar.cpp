// Command-line front end: full pipeline runs plus single-file adf/var/irf helpers.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "macrovar/error.hpp"
#include "macrovar/pipeline.hpp"
#include "macrovar/render.hpp"

namespace fs = std::filesystem;
using namespace macrovar;

namespace {

constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct Globals {
    std::optional<std::uint64_t> seed;
    bool offline = false;
    bool keep_going = false;
    std::optional<int> threads;
    std::string format = "markdown";
    std::string out_dir;
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

void emit(const RunReport& report, const Globals& g, const RenderOptions& opts = {}) {
    const OutputFormat fmt = parse_output_format(g.format);
    if (g.out_dir.empty()) {
        std::cout << render_report(report, fmt, opts);
        return;
    }
    fs::create_directories(g.out_dir);
    switch (fmt) {
        case OutputFormat::Markdown:
            write_file(fs::path(g.out_dir) / "report.md", render_markdown(report, opts));
            break;
        case OutputFormat::Json:
            write_file(fs::path(g.out_dir) / "report.json", report_to_json(report));
            break;
        case OutputFormat::Csv:
            for (const auto& [name, body] : render_csv_tables(report, opts)) {
                write_file(fs::path(g.out_dir) / (name + ".csv"), body);
            }
            break;
    }
    std::cerr << "wrote " << g.format << " output to " << g.out_dir << "\n";
}

// Single-file commands share this scaffold: one country, named after the file stem.
RunReport single_report(const std::string& csv, const std::string& what) {
    RunReport r;
    r.provenance.version = library_version();
    r.provenance.data_source = "csv " + csv;
    r.provenance.config = what + "\n";
    return r;
}

CountryReport country_shell(const CountryPanel& panel, const std::string& csv) {
    CountryReport c;
    c.country = panel.country();
    c.source = csv;
    c.first_year = panel.start_year();
    c.last_year = panel.end_year();
    c.n_obs = static_cast<int>(panel.num_obs());
    c.names = panel.names();
    c.units.assign(c.names.size(), "as supplied");
    return c;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

CountryPanel load_panel(const std::string& csv, const std::vector<std::string>& ordering) {
    const auto raw = read_country_csv(csv, fs::path(csv).stem().string());
    auto panel = align_panel(raw.series);
    if (!ordering.empty()) panel = panel.with_ordering(parse_ordering(panel, ordering));
    return panel;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VAR toolkit: unit roots, cointegration, VAR estimation, diagnostics and structural analysis"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Random seed (overrides the config)");
    app.add_flag("--offline", g.offline, "Never touch the network; use cached responses only");
    app.add_flag("--keep-going", g.keep_going, "Mark failed stages as skipped instead of aborting");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "markdown, csv or json")
        ->check(CLI::IsMember({"markdown", "md", "csv", "json"}));
    app.add_option("--out", g.out_dir, "Write output files into this directory instead of stdout");

    auto* run = app.add_subcommand("run", "Run the full pipeline from a config file");
    std::string config_path;
    run->add_option("--config", config_path, "Config file (flat key = value)")->required();

    auto* adf = app.add_subcommand("adf", "Augmented Dickey-Fuller test on one CSV column");
    std::string adf_csv, column = "hdi";
    std::optional<int> adf_lags, adf_max;
    bool adf_diff = false;
    adf->add_option("csv", adf_csv, "Country CSV")->required()->check(CLI::ExistingFile);
    adf->add_option("--column", column, "Variable (hdi, gov_exp_health, gov_exp_edu or an alias)");
    adf->add_option("--lags", adf_lags, "Fixed number of lagged differences");
    adf->add_option("--max-lags", adf_max, "Ceiling for the Schwarz search");
    adf->add_flag("--differences", adf_diff, "Also test the first difference");

    auto* var = app.add_subcommand("var", "Estimate a VAR from one country CSV");
    std::string var_csv;
    int var_lags = 2;
    int var_max_lag = 0;
    var->add_option("csv", var_csv, "Country CSV")->required()->check(CLI::ExistingFile);
    var->add_option("--lags", var_lags, "Lag order")->check(CLI::PositiveNumber);
    var->add_option("--max-lag", var_max_lag, "Also print the lag selection table up to this lag");

    auto* irf = app.add_subcommand("irf", "Impulse responses, variance and historical decomposition");
    std::string irf_csv, irf_order;
    int horizon = 10, irf_lags = 2, draws = 1000;
    irf->add_option("csv", irf_csv, "Country CSV")->required()->check(CLI::ExistingFile);
    irf->add_option("--horizon", horizon, "Horizon")->check(CLI::PositiveNumber);
    irf->add_option("--ordering", irf_order, "Cholesky ordering, comma separated");
    irf->add_option("--lags", irf_lags, "VAR lag order")->check(CLI::PositiveNumber);
    irf->add_option("--draws", draws, "Monte Carlo band draws (0 disables)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitData;
    }

    try {
        if (*run) {
            auto cfg = load_config(config_path);
            if (g.seed) cfg.seed = *g.seed;
            if (g.offline) cfg.offline = true;
            if (g.keep_going) cfg.keep_going = true;
            if (g.threads) cfg.threads = *g.threads;
            if (app.get_option("--format")->count() == 0) g.format = to_string(cfg.output_format);
            emit(run_pipeline(cfg), g);
        } else if (*adf) {
            const auto raw = read_country_csv(adf_csv, fs::path(adf_csv).stem().string());
            std::optional<std::size_t> idx;
            for (std::size_t i = 0; i < raw.series.size(); ++i) {
                const auto& n = raw.series[i].name();
                if (n == column || (n.size() > column.size() && n.ends_with("_" + column))) idx = i;
            }
            if (!idx) throw DataError("unknown column: " + column);
            const auto series = interpolate_gaps(raw.series[*idx]);
            const AdfLagRule rule = adf_lags ? AdfLagRule::fixed(*adf_lags) : AdfLagRule::schwarz(adf_max);
            const CountryPanel panel(raw.country, {series});
            auto rep = single_report(adf_csv, fmt::format("adf --column {} ({})", series.name(), rule.describe()));
            auto c = country_shell(panel, adf_csv);
            c.adf_levels.value = std::vector<AdfResult>{adf_test(series, rule)};
            RenderOptions opts{{"adf_levels"}};
            if (adf_diff) {
                c.adf_differences.value = std::vector<AdfResult>{adf_test(first_difference(series), rule)};
                opts.sections.push_back("adf_differences");
            }
            rep.countries.push_back(std::move(c));
            emit(rep, g, opts);
        } else if (*var) {
            const auto panel = load_panel(var_csv, {});
            auto rep = single_report(var_csv, fmt::format("var --lags {}", var_lags));
            auto c = country_shell(panel, var_csv);
            c.var_sample = "levels";
            c.var_lag_note = fmt::format("Lag order {} (command line)", var_lags);
            RenderOptions opts{{"var", "granger", "stability"}};
            if (var_max_lag > 0) {
                c.lag_selection.value = select_lag_order(panel, var_max_lag);
                opts.sections.push_back("lag_selection");
            }
            c.var.value = estimate_var(panel, VarSpec{var_lags, true});
            c.granger.value = granger_wald(*c.var.value);
            c.stability.value = stability_roots(*c.var.value);
            rep.countries.push_back(std::move(c));
            emit(rep, g, opts);
        } else if (*irf) {
            const auto panel = load_panel(irf_csv, split_list(irf_order));
            const std::uint64_t seed = g.seed.value_or(PipelineConfig{}.seed);
            auto rep = single_report(irf_csv, fmt::format("irf --horizon {} --lags {} --draws {} --seed {}", horizon,
                                                          irf_lags, draws, seed));
            auto c = country_shell(panel, irf_csv);
            const auto est = estimate_var(panel, VarSpec{irf_lags, true});
            c.structural.value = structural_analysis(est, horizon, est.ordering, draws,
                                                     country_seed(seed, panel.country()), g.threads.value_or(1));
            rep.countries.push_back(std::move(c));
            emit(rep, g, RenderOptions{{"structural"}});
        }
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.numeric() ? kExitNumeric : kExitData;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
