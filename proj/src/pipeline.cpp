#include "macrovar/pipeline.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <thread>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "macrovar/error.hpp"

namespace macrovar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string o;
    for (std::size_t i = 0; i < v.size(); ++i) o += (i ? sep : "") + v[i];
    return o;
}

// Runs one stage; returns false (after recording the skip) when it failed under keep_going.
class StageRunner {
public:
    explicit StageRunner(bool keep_going) : keep_going_(keep_going) {}

    template <class T, class F>
    bool run(const char* stage, Section<T>& out, F&& body) {
        try {
            out.value = body();
            return true;
        } catch (const DataError& e) {
            return fail(stage, out, e.what(), false);
        } catch (const NumericError& e) {
            return fail(stage, out, e.what(), true);
        }
    }

    template <class T>
    static void blocked(Section<T>& s, const std::string& why) {
        s.skip(why);
    }

private:
    template <class T>
    bool fail(const char* stage, Section<T>& out, const std::string& cause, bool numeric) {
        if (!keep_going_) throw StageError(stage, cause, numeric);
        out.skip(fmt::format("stage '{}' failed: {}", stage, cause));
        return false;
    }

    bool keep_going_;
};

const char* kJohansenCaveat =
    "the Johansen procedure is defined for the levels of I(1) series; with first differences "
    "(already stationary) the rank test has no cointegration interpretation. Compare with the levels run.";

}  // namespace

std::uint64_t country_seed(std::uint64_t run_seed, const std::string& country) {
    return splitmix64(run_seed ^ splitmix64(fnv1a(country)));
}

AdfLagRule adf_rule_from_config(const PipelineConfig& cfg) {
    if (cfg.adf_lag_rule == "fixed") return AdfLagRule::fixed(cfg.adf_lags);
    return AdfLagRule::schwarz(cfg.adf_max_lags);
}

CountryReport analyse_country(const RawPanel& raw, const PipelineConfig& cfg) {
    CountryReport rep;
    rep.country = raw.country;
    rep.source = raw.source;
    StageRunner stage(cfg.keep_going);

    Section<CountryPanel> panel;
    const bool have_panel = stage.run("interpolate", panel, [&] {
        auto p = align_panel(raw.series);
        return p.with_ordering(parse_ordering(p, cfg.ordering));
    });
    if (have_panel) {
        const auto& p = *panel.value;
        rep.first_year = p.start_year();
        rep.last_year = p.end_year();
        rep.n_obs = static_cast<int>(p.num_obs());
        rep.names = p.names();
    } else {
        for (const auto& s : raw.series) rep.names.push_back(s.name());
    }
    for (const auto& n : rep.names) {
        const auto it = cfg.units.find(n);
        rep.units.push_back(it == cfg.units.end() ? "unspecified" : it->second);
    }
    rep.johansen_sample = to_string(cfg.johansen_on);
    rep.var_sample = to_string(cfg.estimate_on);
    if (cfg.johansen_on == SampleForm::Differences || cfg.estimate_on == SampleForm::Differences) {
        rep.johansen_caveat = std::string("test run on ") + to_string(cfg.johansen_on) + "; " + kJohansenCaveat;
    }

    const std::string no_panel = "requires an aligned panel (" + panel.skipped + ")";
    if (!have_panel) {
        for (auto* s : {&rep.adf_levels, &rep.adf_differences}) StageRunner::blocked(*s, no_panel);
        StageRunner::blocked(rep.johansen, no_panel);
        StageRunner::blocked(rep.lag_selection, no_panel);
        StageRunner::blocked(rep.var, no_panel);
        StageRunner::blocked(rep.granger, no_panel);
        StageRunner::blocked(rep.stability, no_panel);
        StageRunner::blocked(rep.cross_correlations, no_panel);
        StageRunner::blocked(rep.lm, no_panel);
        StageRunner::blocked(rep.structural, no_panel);
        StageRunner::blocked(rep.forecast, no_panel);
        return rep;
    }
    const CountryPanel& levels = *panel.value;
    const AdfLagRule rule = adf_rule_from_config(cfg);
    auto adf_all = [&](const CountryPanel& p) {
        std::vector<AdfResult> out;
        for (const auto& s : p.variables()) out.push_back(adf_test(s, rule));
        return out;
    };

    stage.run("adf_levels", rep.adf_levels, [&] { return adf_all(levels); });

    Section<CountryPanel> diffs;
    const bool have_diffs = stage.run("difference", diffs, [&] { return difference_panel(levels); });
    if (have_diffs) {
        stage.run("adf_differences", rep.adf_differences, [&] { return adf_all(*diffs.value); });
    } else {
        StageRunner::blocked(rep.adf_differences, diffs.skipped);
    }

    auto sample = [&](SampleForm f) -> const CountryPanel* {
        if (f == SampleForm::Levels) return &levels;
        return have_diffs ? &*diffs.value : nullptr;
    };
    if (const auto* jp = sample(cfg.johansen_on)) {
        stage.run("johansen", rep.johansen, [&] { return johansen_test(*jp, cfg.johansen_lags); });
    } else {
        StageRunner::blocked(rep.johansen, "requires differenced data (" + diffs.skipped + ")");
    }

    const CountryPanel* est_panel = sample(cfg.estimate_on);
    if (est_panel == nullptr) {
        const std::string why = "requires differenced data (" + diffs.skipped + ")";
        StageRunner::blocked(rep.lag_selection, why);
        StageRunner::blocked(rep.var, why);
    } else {
        stage.run("lag_selection", rep.lag_selection,
                  [&] { return select_lag_order(*est_panel, cfg.max_lag_search); });
        std::optional<int> lag = cfg.lag_order;
        if (lag) {
            rep.var_lag_note = fmt::format("Lag order {} (configured)", *lag);
            if (rep.lag_selection.present()) {
                const auto [best, who] = rep.lag_selection.value->consensus();
                rep.var_lag_note += fmt::format("; selection criteria favour {} ({})", best, join(who, ", "));
            }
        } else if (rep.lag_selection.present()) {
            const auto [best, who] = rep.lag_selection.value->consensus();
            lag = std::max(best, 1);
            rep.var_lag_note = fmt::format("Lag order {} selected automatically by {}", *lag, join(who, ", "));
            if (best == 0) rep.var_lag_note += " (criteria chose 0; raised to the minimum of 1)";
        }
        if (lag) {
            stage.run("var", rep.var, [&] { return estimate_var(*est_panel, VarSpec{*lag, true}); });
        } else {
            StageRunner::blocked(rep.var, "lag order \"auto\" requires lag selection (" +
                                              rep.lag_selection.skipped + ")");
        }
    }

    if (!rep.var.present()) {
        const std::string why = "requires a VAR estimate (" + rep.var.skipped + ")";
        StageRunner::blocked(rep.granger, why);
        StageRunner::blocked(rep.stability, why);
        StageRunner::blocked(rep.cross_correlations, why);
        StageRunner::blocked(rep.lm, why);
        StageRunner::blocked(rep.structural, why);
        StageRunner::blocked(rep.forecast, why);
        return rep;
    }
    const VarEstimate& est = *rep.var.value;

    stage.run("granger", rep.granger, [&] { return granger_wald(est); });
    if (stage.run("stability", rep.stability, [&] { return stability_roots(est); }) &&
        !rep.stability.value->stable) {
        rep.warnings.push_back(fmt::format("VAR is not stable (max root modulus {:.6g}); impulse responses and "
                                           "decompositions are reported but do not converge",
                                           rep.stability.value->max_modulus()));
    }
    stage.run("cross_correlations", rep.cross_correlations, [&] {
        int max_lag = cfg.xcorr_max_lag;
        const int limit = static_cast<int>(est.num_obs()) - 3;
        if (max_lag > limit) {
            rep.warnings.push_back(fmt::format("cross-correlation max lag reduced from {} to {} (T_eff = {})",
                                               max_lag, limit, est.num_obs()));
            max_lag = limit;
        }
        return residual_cross_correlations(est, max_lag);
    });
    stage.run("lm", rep.lm, [&] { return serial_correlation_lm(est, cfg.lm_max_lag); });
    stage.run("structural", rep.structural, [&] {
        return structural_analysis(est, cfg.horizon, est.ordering, cfg.irf_draws, country_seed(cfg.seed, raw.country),
                                   cfg.threads);
    });
    if (cfg.holdout > 0) {
        stage.run("forecast", rep.forecast,
                  [&] { return holdout_evaluation(*est_panel, VarSpec{est.lags, true}, cfg.holdout); });
    } else {
        StageRunner::blocked(rep.forecast, "disabled (holdout = 0)");
    }
    return rep;
}

RunReport run_pipeline(const PipelineConfig& cfg, HttpClient* client) {
    cfg.validate();
    RunReport report;
    auto& p = report.provenance;
    p.version = library_version();
    p.data_source = cfg.data_source == DataSourceKind::CsvDir
                        ? "csv_dir " + cfg.data_dir
                        : fmt::format("worldbank_fetch (cache {}, HDI file {})", cfg.cache_dir, cfg.hdi_csv);
    p.config = describe_config(cfg, false);
    p.libraries = {
        fmt::format("Eigen {}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION),
        fmt::format("Boost {}.{}.{}", BOOST_VERSION / 100000, BOOST_VERSION / 100 % 1000, BOOST_VERSION % 100),
        fmt::format("fmt {}.{}.{}", FMT_VERSION / 10000, FMT_VERSION / 100 % 100, FMT_VERSION % 100),
        fmt::format("nlohmann/json {}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                    NLOHMANN_JSON_VERSION_PATCH),
        std::string("cpp-httplib ") + CPPHTTPLIB_VERSION,
    };
    p.notes = {
        "Recursive (Cholesky) identification; the ordering is listed with each VAR.",
        cfg.irf_draws > 0
            ? fmt::format("Impulse-response bands: parametric Monte Carlo, {} draws, seed {} split per country.",
                          cfg.irf_draws, cfg.seed)
            : std::string("Impulse-response bands disabled."),
        "Johansen p-values use a gamma approximation and are approximate.",
    };

    const std::size_t n = cfg.countries.size();
    std::vector<CountryReport> results(n);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](std::size_t i) {
        try {
            const auto& country = cfg.countries[i];
            RawPanel raw;
            try {
                raw = fetch_indicators(country, cfg, client);
            } catch (const DataError& e) {
                if (!cfg.keep_going) throw StageError("ingest", e.what(), false);
                raw.country = country;
                raw.source = fmt::format("ingest failed: {}", e.what());
                CountryReport rep;
                rep.country = country;
                rep.source = raw.source;
                rep.names = kPanelColumns;
                for (const auto& nm : rep.names) {
                    const auto it = cfg.units.find(nm);
                    rep.units.push_back(it == cfg.units.end() ? "unspecified" : it->second);
                }
                const std::string why = fmt::format("stage 'ingest' failed: {}", e.what());
                rep.adf_levels.skip(why);
                rep.adf_differences.skip(why);
                rep.johansen.skip(why);
                rep.johansen_sample = to_string(cfg.johansen_on);
                rep.lag_selection.skip(why);
                rep.var.skip(why);
                rep.var_sample = to_string(cfg.estimate_on);
                rep.granger.skip(why);
                rep.stability.skip(why);
                rep.cross_correlations.skip(why);
                rep.lm.skip(why);
                rep.structural.skip(why);
                rep.forecast.skip(why);
                results[i] = std::move(rep);
                return;
            }
            results[i] = analyse_country(raw, cfg);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) work(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    report.countries = std::move(results);
    return report;
}

}  // namespace macrovar
