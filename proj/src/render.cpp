#include "macrovar/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

namespace macrovar {

using Eigen::Index;

std::string fmt_stat(double x) {
    if (std::isnan(x)) return "NA";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // avoids "-0"
    return fmt::format("{:.6g}", x);
}

std::string fmt_p(double p) {
    if (!std::isfinite(p)) return "NA";
    return fmt::format("{:.4f}", p);
}

std::string adf_interpretation(const AdfResult& r) {
    return r.p_value < 0.05 ? "Reject null hypothesis; series is stationary."
                            : "Fail to reject null hypothesis; unit root present.";
}

std::string johansen_interpretation(const JohansenResult& r, std::size_t rank) {
    const bool trace_rej = r.trace_stats[rank] > r.trace_cv_5pct[rank];
    const bool max_rej = r.max_eigen_stats[rank] > r.max_eigen_cv_5pct[rank];
    if (!trace_rej && !max_rej) {
        return rank == 0 ? "No cointegration at the 5% level." : "Not rejected at the 5% level.";
    }
    if (trace_rej && max_rej) return "Rejected at the 5% level (trace and max-eigen).";
    return trace_rej ? "Rejected at the 5% level (trace only)." : "Rejected at the 5% level (max-eigen only).";
}

std::string granger_interpretation(const WaldBlockResult& w) {
    return w.p_value < 0.05 ? "Significant at the 5% level." : "Not significant at the 5% level.";
}

std::string stability_interpretation(const StabilityResult& s) {
    return s.stable ? "All roots lie inside the unit circle; the VAR satisfies the stability condition."
                    : "At least one root lies on or outside the unit circle; the VAR is not stable.";
}

std::string lm_interpretation(const LmRow& r) {
    return r.p_lre < 0.05 ? "Serial correlation at the 5% level." : "No serial correlation at the 5% level.";
}

namespace {

std::string display(const std::string& name) {
    std::string out;
    const std::string base = name.rfind("gov_exp_", 0) == 0 ? "govt_exp_" + name.substr(8) : name;
    for (char c : base) out += c == '_' ? ' ' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string complex_str(const std::complex<double>& z) {
    if (z.imag() == 0.0) return fmt_stat(z.real());
    return fmt::format("{} {} {}i", fmt_stat(z.real()), z.imag() < 0 ? "-" : "+", fmt_stat(std::abs(z.imag())));
}

// Markdown table accumulator.
class Md {
public:
    explicit Md(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
    std::string str() const {
        std::string o = "| " + join(header_) + " |\n|";
        for (std::size_t i = 0; i < header_.size(); ++i) o += "---|";
        o += "\n";
        for (const auto& r : rows_) o += "| " + join(r) + " |\n";
        return o + "\n";
    }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string o;
        for (std::size_t i = 0; i < v.size(); ++i) o += (i ? " | " : "") + v[i];
        return o;
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// CSV accumulator (RFC 4180 quoting where needed).
class Csv {
public:
    explicit Csv(const std::vector<std::string>& header) { row(header); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += quote(cells[i]);
        }
        text_ += '\n';
    }
    const std::string& str() const { return text_; }

private:
    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string o = "\"";
        for (char c : s) {
            if (c == '"') o += '"';
            o += c;
        }
        return o + "\"";
    }
    std::string text_;
};

std::string ordering_str(const std::vector<std::string>& names, const std::vector<std::size_t>& ordering) {
    std::string o;
    for (std::size_t i = 0; i < ordering.size(); ++i) o += (i ? ", " : "") + names[ordering[i]];
    return o;
}

std::string section_header(const char* title) { return fmt::format("## {}\n\n", title); }

template <class T>
bool skipped_line(std::string& o, const CountryReport& c, const Section<T>& s) {
    if (s.present()) return false;
    o += fmt::format("- {}: skipped ({})\n", c.country, s.skipped);
    return true;
}

void md_data(std::string& o, const RunReport& r) {
    o += section_header("Data");
    Md t({"Country", "Sample", "Obs", "Source", "Variables (units)"});
    for (const auto& c : r.countries) {
        std::string vars;
        for (std::size_t i = 0; i < c.names.size(); ++i) {
            vars += (i ? ", " : "") + c.names[i] + (i < c.units.size() ? " (" + c.units[i] + ")" : "");
        }
        t.row({c.country, c.n_obs ? fmt::format("{}-{}", c.first_year, c.last_year) : "NA",
               std::to_string(c.n_obs), c.source, vars});
    }
    o += t.str();
}

void md_adf(std::string& o, const RunReport& r, bool diffs) {
    o += section_header(diffs ? "Unit root tests after first differencing" : "Unit root tests (levels)");
    Md t({"Country", "Variable", "ADF Test Statistic", "p-value", "1% Critical Value", "5% Critical Value",
          "10% Critical Value", "Lags", "Obs", "Interpretation"});
    std::string skips;
    for (const auto& c : r.countries) {
        const auto& s = diffs ? c.adf_differences : c.adf_levels;
        if (skipped_line(skips, c, s)) continue;
        for (std::size_t i = 0; i < s.value->size(); ++i) {
            const auto& a = (*s.value)[i];
            const std::string v = diffs ? "D(" + display(c.names[i]) + ")" : display(c.names[i]);
            t.row({c.country, v, fmt_stat(a.statistic), fmt_p(a.p_value), fmt_stat(a.cv_1pct), fmt_stat(a.cv_5pct),
                   fmt_stat(a.cv_10pct), std::to_string(a.lags_used), std::to_string(a.n_obs),
                   adf_interpretation(a)});
        }
    }
    o += t.str() + skips;
    for (const auto& c : r.countries) {
        const auto& s = diffs ? c.adf_differences : c.adf_levels;
        if (s.present() && !s.value->empty()) {
            o += fmt::format("Constant, no trend. Lag rule: {}. Critical values from a finite-sample response "
                             "surface; p-values interpolated.\n\n",
                             s.value->front().lag_rule);
            break;
        }
    }
}

void md_johansen(std::string& o, const RunReport& r) {
    o += section_header("Johansen cointegration test");
    Md t({"Country", "Sample", "Hypothesized No. of CE(s)", "Eigenvalue", "Trace Statistic", "Max-Eigen Statistic",
          "Critical Value (Trace)", "Critical Value (Max-Eigen)", "p-value (Trace)", "p-value (Max-Eigen)",
          "Interpretation"});
    std::string skips;
    std::string notes;
    for (const auto& c : r.countries) {
        if (skipped_line(skips, c, c.johansen)) continue;
        const auto& j = *c.johansen.value;
        for (std::size_t k = 0; k < j.eigenvalues.size(); ++k) {
            t.row({c.country, c.johansen_sample, k == 0 ? "None" : fmt::format("At most {}", k),
                   fmt_stat(j.eigenvalues[k]), fmt_stat(j.trace_stats[k]), fmt_stat(j.max_eigen_stats[k]),
                   fmt_stat(j.trace_cv_5pct[k]), fmt_stat(j.max_eigen_cv_5pct[k]), fmt_p(j.p_values_trace[k]),
                   fmt_p(j.p_values_max[k]), johansen_interpretation(j, k)});
        }
        notes += fmt::format("- {}: trace test indicates {} cointegrating equation(s) at the 5% level; "
                             "{} lagged difference(s), {} observations.\n",
                             c.country, j.rank_decision, j.lags_in_differences, j.n_obs);
        if (!c.johansen_caveat.empty()) notes += fmt::format("- {}: caveat: {}\n", c.country, c.johansen_caveat);
    }
    o += t.str() + skips + notes;
    o += "\nIntercept in the VAR, no trend. 5% critical values tabulated; p-values from a gamma approximation "
         "(approximate).\n\n";
}

void md_lags(std::string& o, const RunReport& r) {
    o += section_header("VAR lag order selection criteria");
    Md t({"Country", "Lag", "LogL", "LR", "FPE", "AIC", "SC", "HQ"});
    std::string skips;
    for (const auto& c : r.countries) {
        if (skipped_line(skips, c, c.lag_selection)) continue;
        const auto& s = *c.lag_selection.value;
        for (const auto& row : s.rows) {
            auto star = [&](int lag) { return lag == row.lag ? "*" : ""; };
            t.row({c.country, std::to_string(row.lag), fmt_stat(row.log_l),
                   row.lr ? fmt_stat(*row.lr) + star(s.lr_lag) : "NA", fmt_stat(row.fpe) + star(s.fpe_lag),
                   fmt_stat(row.aic) + star(s.aic_lag), fmt_stat(row.sc) + star(s.sc_lag),
                   fmt_stat(row.hq) + star(s.hq_lag)});
        }
    }
    o += t.str() + skips;
    o += "\n\\* lag order selected by the criterion. LR: sequential modified likelihood-ratio test (each at 5%); "
         "all lags fitted on a common sample.\n\n";
}

void md_var(std::string& o, const CountryReport& c) {
    o += fmt::format("### {}\n\n", c.country);
    if (!c.var.present()) {
        o += fmt::format("Skipped ({})\n\n", c.var.skipped);
        return;
    }
    const auto& v = *c.var.value;
    o += fmt::format("Sample: {}-{} ({}), {} observations. {}. Cholesky ordering: {}.\n\n", v.first_year,
                     v.first_year + static_cast<int>(v.num_obs()) - 1, c.var_sample, v.num_obs(), c.var_lag_note,
                     ordering_str(v.names, v.ordering));
    Md t({"Variable", "Coefficient", "Standard Error", "t-Statistic"});
    for (const auto& eq : v.per_equation) {
        t.row({"**" + display(eq.variable) + "**", "", "", ""});
        for (const auto& cr : eq.coef_table) {
            std::string label = cr.name;
            const auto paren = label.find('(');
            if (paren != std::string::npos) label = display(label.substr(0, paren)) + label.substr(paren);
            t.row({label, fmt_stat(cr.coefficient), fmt_stat(cr.std_error), fmt_stat(cr.t_stat)});
        }
    }
    o += t.str();
    std::vector<std::string> head{"Statistic"};
    for (const auto& eq : v.per_equation) head.push_back(display(eq.variable));
    Md s(head);
    auto stat_row = [&](const char* label, auto field) {
        std::vector<std::string> row{label};
        for (const auto& eq : v.per_equation) row.push_back(fmt_stat(field(eq)));
        s.row(row);
    };
    stat_row("R-squared", [](const EquationStats& e) { return e.r_squared; });
    stat_row("Adj. R-squared", [](const EquationStats& e) { return e.adj_r_squared; });
    stat_row("Sum of Squared Residuals", [](const EquationStats& e) { return e.ssr; });
    stat_row("Standard Error of Equation", [](const EquationStats& e) { return e.se_equation; });
    stat_row("F-statistic", [](const EquationStats& e) { return e.f_stat; });
    stat_row("Log likelihood", [](const EquationStats& e) { return e.log_likelihood; });
    o += s.str();
    o += fmt::format("System: log likelihood {}, AIC {}, SC {}, HQ {}.\n\n", fmt_stat(v.log_likelihood),
                     fmt_stat(v.aic), fmt_stat(v.sc), fmt_stat(v.hq));
}

void md_granger(std::string& o, const RunReport& r) {
    o += section_header("Granger causality / block exogeneity Wald tests");
    Md t({"Country", "Dependent", "Excluded", "Chi-sq", "df", "Prob.", "Interpretation"});
    std::string skips;
    for (const auto& c : r.countries) {
        if (skipped_line(skips, c, c.granger)) continue;
        for (const auto& w : *c.granger.value) {
            t.row({c.country, display(w.dependent), w.excluded == "All" ? "All" : display(w.excluded),
                   fmt_stat(w.chi_sq), std::to_string(w.df), fmt_p(w.p_value), granger_interpretation(w)});
        }
    }
    o += t.str() + skips + "\n";
}

void md_stability(std::string& o, const RunReport& r) {
    o += section_header("Roots of characteristic polynomial");
    Md t({"Country", "Root", "Modulus"});
    std::string skips;
    std::string notes;
    for (const auto& c : r.countries) {
        if (skipped_line(skips, c, c.stability)) continue;
        const auto& s = *c.stability.value;
        for (std::size_t i = 0; i < s.roots.size(); ++i) {
            t.row({c.country, complex_str(s.roots[i]), fmt_stat(s.moduli[i])});
        }
        notes += fmt::format("- {}: {}\n", c.country, stability_interpretation(s));
    }
    o += t.str() + skips + notes + "\n";
}

void md_structural(std::string& o, const CountryReport& c) {
    o += fmt::format("### {}\n\n", c.country);
    if (!c.structural.present()) {
        o += fmt::format("Skipped ({})\n\n", c.structural.skipped);
        return;
    }
    const auto& s = *c.structural.value;
    const auto K = s.names.size();
    o += fmt::format("Cholesky ordering: {}. One standard deviation shocks.\n\n", ordering_str(s.names, s.ordering));
    if (s.unstable) o += "Warning: the VAR is not stable; responses do not die out.\n\n";

    o += "Impulse responses (response <- shock):\n\n";
    std::vector<std::string> head{"Horizon"};
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) head.push_back(display(s.names[i]) + " <- " + display(s.names[j]));
    }
    Md irf(head);
    for (std::size_t h = 0; h < s.irf.size(); ++h) {
        std::vector<std::string> row{std::to_string(h)};
        for (std::size_t i = 0; i < K; ++i) {
            for (std::size_t j = 0; j < K; ++j) {
                row.push_back(fmt_stat(s.irf[h](static_cast<Index>(i), static_cast<Index>(j))));
            }
        }
        irf.row(row);
    }
    o += irf.str();
    if (s.bands) {
        o += fmt::format("Bands ({} draws, seed {}): {}. Band values are in the CSV output.\n\n", s.bands->draws,
                         s.bands->seed, s.bands->method);
    }

    for (std::size_t i = 0; i < K; ++i) {
        o += fmt::format("Variance decomposition of {} (percent):\n\n", display(s.names[i]));
        std::vector<std::string> fh{"Period", "S.E."};
        for (std::size_t j = 0; j < K; ++j) fh.push_back(display(s.names[j]));
        Md f(fh);
        const auto& shares = s.fevd.shares[i];
        for (Index h = 0; h < shares.rows(); ++h) {
            std::vector<std::string> row{std::to_string(h + 1),
                                         fmt_stat(s.fevd.std_error(h, static_cast<Index>(i)))};
            for (std::size_t j = 0; j < K; ++j) row.push_back(fmt_stat(shares(h, static_cast<Index>(j))));
            f.row(row);
        }
        o += f.str();
    }

    for (std::size_t i = 0; i < K; ++i) {
        o += fmt::format("Historical decomposition of {}:\n\n", display(s.names[i]));
        std::vector<std::string> hh{"Year", "Actual", "Baseline"};
        for (std::size_t k = 0; k < K; ++k) hh.push_back(display(s.names[k]) + " shock");
        Md t(hh);
        const auto& contrib = s.hist.contributions[i];
        for (Index r = 0; r < contrib.rows(); ++r) {
            std::vector<std::string> row{std::to_string(s.hist.first_year + r),
                                         fmt_stat(s.hist.actual(r, static_cast<Index>(i))),
                                         fmt_stat(s.hist.baseline(r, static_cast<Index>(i)))};
            for (std::size_t k = 0; k < K; ++k) row.push_back(fmt_stat(contrib(r, static_cast<Index>(k))));
            t.row(row);
        }
        o += t.str();
    }
}

void md_xcorr(std::string& o, const CountryReport& c) {
    o += fmt::format("### {}\n\n", c.country);
    if (!c.cross_correlations.present()) {
        o += fmt::format("Skipped ({})\n\n", c.cross_correlations.skipped);
        return;
    }
    const auto& x = *c.cross_correlations.value;
    const auto K = c.names.size();
    std::vector<std::string> head{"Lag"};
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) head.push_back(display(c.names[i]) + ", " + display(c.names[j]) + "(-i)");
    }
    Md t(head);
    for (std::size_t l = 0; l < x.by_lag.size(); ++l) {
        std::vector<std::string> row{std::to_string(l)};
        for (std::size_t i = 0; i < K; ++i) {
            for (std::size_t j = 0; j < K; ++j) {
                row.push_back(fmt_stat(x.by_lag[l](static_cast<Index>(i), static_cast<Index>(j))));
            }
        }
        t.row(row);
    }
    o += t.str();
    o += fmt::format("Asymptotic standard error (unadjusted) for lag > 0: {}.\n\n", fmt_stat(x.band));
}

void md_lm(std::string& o, const RunReport& r) {
    o += section_header("VAR residual serial correlation LM tests");
    Md t({"Country", "Null hypothesis", "Lag", "LRE* stat", "df", "Prob.", "Rao F-stat", "df", "Prob.",
          "Interpretation"});
    std::string skips;
    for (const auto& c : r.countries) {
        if (skipped_line(skips, c, c.lm)) continue;
        auto emit = [&](const LmRow& row) {
            const std::string hyp = row.cumulative ? fmt::format("no serial correlation at lags 1 to {}", row.lag)
                                                   : fmt::format("no serial correlation at lag {}", row.lag);
            t.row({c.country, hyp, std::to_string(row.lag), fmt_stat(row.lre_stat), std::to_string(row.df),
                   fmt_p(row.p_lre), fmt_stat(row.rao_f),
                   fmt::format("({}, {:.1f})", fmt_stat(row.df_num), row.df_denom), fmt_p(row.p_rao),
                   lm_interpretation(row)});
        };
        for (const auto& row : c.lm.value->at_lag) emit(row);
        for (const auto& row : c.lm.value->cumulative) emit(row);
    }
    o += t.str() + skips;
    o += "\nLRE*: Edgeworth-corrected likelihood ratio statistic. Presample residuals set to zero.\n\n";
}

void md_forecast(std::string& o, const RunReport& r) {
    o += section_header("Hold-out forecast evaluation (non-normative)");
    Md t({"Country", "Variable", "Hold-out", "RMSE", "MAE"});
    std::string skips;
    for (const auto& c : r.countries) {
        if (skipped_line(skips, c, c.forecast)) continue;
        const auto& f = *c.forecast.value;
        for (std::size_t k = 0; k < f.names.size(); ++k) {
            t.row({c.country, display(f.names[k]),
                   fmt::format("{}-{}", f.first_year, f.first_year + f.holdout - 1), fmt_stat(f.rmse[k]),
                   fmt_stat(f.mae[k])});
        }
    }
    o += t.str() + skips;
    o += "\nIterated forecasts from a VAR refitted without the hold-out rows; a convenience check only.\n\n";
}

std::string table_section(const std::string& table) {
    if (table == "var_coefficients" || table == "var_equations") return "var";
    if (table == "irf" || table == "fevd" || table == "historical_decomposition") return "structural";
    if (table.rfind("forecast", 0) == 0) return "forecast";
    if (table == "skipped") return "";
    return table;
}

}  // namespace

bool RenderOptions::wants(const std::string& key) const {
    return sections.empty() || std::find(sections.begin(), sections.end(), key) != sections.end();
}

std::string render_markdown(const RunReport& r, const RenderOptions& opts) {
    std::string o = "# VAR analysis report\n\n";
    const auto& p = r.provenance;
    o += fmt::format("Generated by {} {}. Data: {}.\n\n", p.tool, p.version, p.data_source);
    if (!p.libraries.empty()) {
        o += "Libraries: ";
        for (std::size_t i = 0; i < p.libraries.size(); ++i) o += (i ? ", " : "") + p.libraries[i];
        o += ".\n\n";
    }
    for (const auto& n : p.notes) o += "- " + n + "\n";
    if (!p.notes.empty()) o += "\n";
    o += "Configuration:\n\n```\n" + p.config + "```\n\n";

    if (opts.wants("data")) md_data(o, r);
    if (opts.wants("adf_levels")) md_adf(o, r, false);
    if (opts.wants("adf_differences")) md_adf(o, r, true);
    if (opts.wants("johansen")) md_johansen(o, r);
    if (opts.wants("lag_selection")) md_lags(o, r);
    if (opts.wants("var")) {
        o += section_header("Vector autoregression estimates");
        for (const auto& c : r.countries) md_var(o, c);
    }
    if (opts.wants("granger")) md_granger(o, r);
    if (opts.wants("stability")) md_stability(o, r);
    if (opts.wants("structural")) {
        o += section_header("Impulse responses, variance decomposition and historical decomposition");
        for (const auto& c : r.countries) md_structural(o, c);
    }
    if (opts.wants("cross_correlations")) {
        o += section_header("VAR residual cross-correlations");
        for (const auto& c : r.countries) md_xcorr(o, c);
    }
    if (opts.wants("lm")) md_lm(o, r);
    if (opts.wants("forecast")) md_forecast(o, r);

    bool any_warning = false;
    for (const auto& c : r.countries) any_warning = any_warning || !c.warnings.empty();
    if (any_warning) {
        o += section_header("Warnings");
        for (const auto& c : r.countries) {
            for (const auto& w : c.warnings) o += fmt::format("- {}: {}\n", c.country, w);
        }
        o += "\n";
    }
    while (o.size() >= 2 && o[o.size() - 1] == '\n' && o[o.size() - 2] == '\n') o.pop_back();
    return o;
}

std::vector<std::pair<std::string, std::string>> render_csv_tables(const RunReport& r, const RenderOptions& opts) {
    std::vector<std::pair<std::string, std::string>> all;
    struct Sink {
        const RenderOptions& opts;
        std::vector<std::pair<std::string, std::string>>& all;
        void emplace_back(const std::string& name, const std::string& body) {
            const std::string key = table_section(name);
            const bool keep = key.empty() || (key == "adf" ? opts.wants("adf_levels") || opts.wants("adf_differences")
                                                           : opts.wants(key));
            if (keep) all.emplace_back(name, body);
        }
    } out{opts, all};
    const std::vector<std::string> empty_names;
    const auto& names = r.countries.empty() ? empty_names : r.countries.front().names;

    {
        Csv t({"country", "section", "reason"});
        auto mark = [&](const CountryReport& c, const char* name, const auto& s) {
            if (!s.present() && opts.wants(name)) t.row({c.country, name, s.skipped});
        };
        for (const auto& c : r.countries) {
            mark(c, "adf_levels", c.adf_levels);
            mark(c, "adf_differences", c.adf_differences);
            mark(c, "johansen", c.johansen);
            mark(c, "lag_selection", c.lag_selection);
            mark(c, "var", c.var);
            mark(c, "granger", c.granger);
            mark(c, "stability", c.stability);
            mark(c, "cross_correlations", c.cross_correlations);
            mark(c, "lm", c.lm);
            mark(c, "structural", c.structural);
            mark(c, "forecast", c.forecast);
        }
        out.emplace_back("skipped", t.str());
    }
    {
        Csv t({"country", "sample", "variable", "statistic", "p_value", "cv_1pct", "cv_5pct", "cv_10pct", "lags",
               "n_obs", "lag_rule", "interpretation"});
        for (const auto& c : r.countries) {
            for (bool diffs : {false, true}) {
                const auto& s = diffs ? c.adf_differences : c.adf_levels;
                if (!s.present()) continue;
                for (std::size_t i = 0; i < s.value->size(); ++i) {
                    const auto& a = (*s.value)[i];
                    t.row({c.country, diffs ? "differences" : "levels", c.names[i], fmt_stat(a.statistic),
                           fmt_p(a.p_value), fmt_stat(a.cv_1pct), fmt_stat(a.cv_5pct), fmt_stat(a.cv_10pct),
                           std::to_string(a.lags_used), std::to_string(a.n_obs), a.lag_rule, adf_interpretation(a)});
                }
            }
        }
        out.emplace_back("adf", t.str());
    }
    {
        Csv t({"country", "sample", "hypothesis", "eigenvalue", "trace", "trace_cv_5pct", "trace_p", "max_eigen",
               "max_eigen_cv_5pct", "max_eigen_p", "interpretation"});
        for (const auto& c : r.countries) {
            if (!c.johansen.present()) continue;
            const auto& j = *c.johansen.value;
            for (std::size_t k = 0; k < j.eigenvalues.size(); ++k) {
                t.row({c.country, c.johansen_sample, k == 0 ? "None" : fmt::format("At most {}", k),
                       fmt_stat(j.eigenvalues[k]), fmt_stat(j.trace_stats[k]), fmt_stat(j.trace_cv_5pct[k]),
                       fmt_p(j.p_values_trace[k]), fmt_stat(j.max_eigen_stats[k]), fmt_stat(j.max_eigen_cv_5pct[k]),
                       fmt_p(j.p_values_max[k]), johansen_interpretation(j, k)});
            }
        }
        out.emplace_back("johansen", t.str());
    }
    {
        Csv t({"country", "lag", "log_l", "lr", "fpe", "aic", "sc", "hq", "selected_by"});
        for (const auto& c : r.countries) {
            if (!c.lag_selection.present()) continue;
            const auto& s = *c.lag_selection.value;
            for (const auto& row : s.rows) {
                std::string by;
                auto add = [&](int lag, const char* n) {
                    if (lag == row.lag) by += (by.empty() ? "" : ";") + std::string(n);
                };
                add(s.lr_lag, "LR");
                add(s.fpe_lag, "FPE");
                add(s.aic_lag, "AIC");
                add(s.sc_lag, "SC");
                add(s.hq_lag, "HQ");
                t.row({c.country, std::to_string(row.lag), fmt_stat(row.log_l), row.lr ? fmt_stat(*row.lr) : "NA",
                       fmt_stat(row.fpe), fmt_stat(row.aic), fmt_stat(row.sc), fmt_stat(row.hq), by});
            }
        }
        out.emplace_back("lag_selection", t.str());
    }
    {
        Csv coefs({"country", "equation", "regressor", "coefficient", "std_error", "t_stat"});
        Csv eqs({"country", "equation", "sample", "lags", "first_year", "n_obs", "r_squared", "adj_r_squared", "ssr",
                 "se_equation", "f_stat", "log_likelihood"});
        for (const auto& c : r.countries) {
            if (!c.var.present()) continue;
            const auto& v = *c.var.value;
            for (const auto& eq : v.per_equation) {
                for (const auto& cr : eq.coef_table) {
                    coefs.row({c.country, eq.variable, cr.name, fmt_stat(cr.coefficient), fmt_stat(cr.std_error),
                               fmt_stat(cr.t_stat)});
                }
                eqs.row({c.country, eq.variable, c.var_sample, std::to_string(v.lags), std::to_string(v.first_year),
                         std::to_string(v.num_obs()), fmt_stat(eq.r_squared), fmt_stat(eq.adj_r_squared),
                         fmt_stat(eq.ssr), fmt_stat(eq.se_equation), fmt_stat(eq.f_stat),
                         fmt_stat(eq.log_likelihood)});
            }
        }
        out.emplace_back("var_coefficients", coefs.str());
        out.emplace_back("var_equations", eqs.str());
    }
    {
        Csv t({"country", "dependent", "excluded", "chi_sq", "df", "p_value", "interpretation"});
        for (const auto& c : r.countries) {
            if (!c.granger.present()) continue;
            for (const auto& w : *c.granger.value) {
                t.row({c.country, w.dependent, w.excluded, fmt_stat(w.chi_sq), std::to_string(w.df), fmt_p(w.p_value),
                       granger_interpretation(w)});
            }
        }
        out.emplace_back("granger", t.str());
    }
    {
        Csv t({"country", "real", "imag", "modulus"});
        for (const auto& c : r.countries) {
            if (!c.stability.present()) continue;
            const auto& s = *c.stability.value;
            for (std::size_t i = 0; i < s.roots.size(); ++i) {
                t.row({c.country, fmt_stat(s.roots[i].real()), fmt_stat(s.roots[i].imag()), fmt_stat(s.moduli[i])});
            }
        }
        out.emplace_back("stability", t.str());
    }
    {
        Csv t({"country", "lag", "variable", "lagged_variable", "correlation", "band"});
        for (const auto& c : r.countries) {
            if (!c.cross_correlations.present()) continue;
            const auto& x = *c.cross_correlations.value;
            for (std::size_t l = 0; l < x.by_lag.size(); ++l) {
                for (std::size_t i = 0; i < c.names.size(); ++i) {
                    for (std::size_t j = 0; j < c.names.size(); ++j) {
                        t.row({c.country, std::to_string(l), c.names[i], c.names[j],
                               fmt_stat(x.by_lag[l](static_cast<Index>(i), static_cast<Index>(j))), fmt_stat(x.band)});
                    }
                }
            }
        }
        out.emplace_back("cross_correlations", t.str());
    }
    {
        Csv t({"country", "variant", "lag", "lre", "df", "p_lre", "rao_f", "df_num", "df_denom", "p_rao"});
        for (const auto& c : r.countries) {
            if (!c.lm.present()) continue;
            auto emit = [&](const LmRow& row) {
                t.row({c.country, row.cumulative ? "lags_1_to_h" : "lag_h", std::to_string(row.lag),
                       fmt_stat(row.lre_stat), std::to_string(row.df), fmt_p(row.p_lre), fmt_stat(row.rao_f),
                       fmt_stat(row.df_num), fmt_stat(row.df_denom), fmt_p(row.p_rao)});
            };
            for (const auto& row : c.lm.value->at_lag) emit(row);
            for (const auto& row : c.lm.value->cumulative) emit(row);
        }
        out.emplace_back("lm", t.str());
    }
    {
        Csv irf({"country", "response", "shock", "horizon", "value", "lower", "upper"});
        std::vector<std::string> fh{"country", "variable", "period", "se"};
        for (const auto& n : names) fh.push_back("share_" + n);
        Csv fevd(fh);
        std::vector<std::string> hh{"country", "variable", "year", "actual", "baseline"};
        for (const auto& n : names) hh.push_back("contrib_" + n);
        Csv hist(hh);
        for (const auto& c : r.countries) {
            if (!c.structural.present()) continue;
            const auto& s = *c.structural.value;
            const auto K = static_cast<Index>(s.names.size());
            for (Index i = 0; i < K; ++i) {
                for (Index j = 0; j < K; ++j) {
                    for (std::size_t h = 0; h < s.irf.size(); ++h) {
                        irf.row({c.country, s.names[static_cast<std::size_t>(i)], s.names[static_cast<std::size_t>(j)],
                                 std::to_string(h), fmt_stat(s.irf[h](i, j)),
                                 s.bands ? fmt_stat(s.bands->lower[h](i, j)) : "NA",
                                 s.bands ? fmt_stat(s.bands->upper[h](i, j)) : "NA"});
                    }
                }
            }
            for (Index i = 0; i < K; ++i) {
                const auto& sh = s.fevd.shares[static_cast<std::size_t>(i)];
                for (Index h = 0; h < sh.rows(); ++h) {
                    std::vector<std::string> row{c.country, s.names[static_cast<std::size_t>(i)], std::to_string(h + 1),
                                                 fmt_stat(s.fevd.std_error(h, i))};
                    for (Index j = 0; j < K; ++j) row.push_back(fmt_stat(sh(h, j)));
                    fevd.row(row);
                }
            }
            for (Index i = 0; i < K; ++i) {
                const auto& ct = s.hist.contributions[static_cast<std::size_t>(i)];
                for (Index t = 0; t < ct.rows(); ++t) {
                    std::vector<std::string> row{c.country, s.names[static_cast<std::size_t>(i)],
                                                 std::to_string(s.hist.first_year + t), fmt_stat(s.hist.actual(t, i)),
                                                 fmt_stat(s.hist.baseline(t, i))};
                    for (Index k = 0; k < K; ++k) row.push_back(fmt_stat(ct(t, k)));
                    hist.row(row);
                }
            }
        }
        out.emplace_back("irf", irf.str());
        out.emplace_back("fevd", fevd.str());
        out.emplace_back("historical_decomposition", hist.str());
    }
    {
        Csv paths({"country", "variable", "year", "forecast", "actual"});
        Csv metrics({"country", "variable", "holdout", "rmse", "mae"});
        for (const auto& c : r.countries) {
            if (!c.forecast.present()) continue;
            const auto& f = *c.forecast.value;
            for (std::size_t k = 0; k < f.names.size(); ++k) {
                for (Index h = 0; h < f.forecast.rows(); ++h) {
                    paths.row({c.country, f.names[k], std::to_string(f.first_year + h),
                               fmt_stat(f.forecast(h, static_cast<Index>(k))),
                               fmt_stat(f.actual(h, static_cast<Index>(k)))});
                }
                metrics.row({c.country, f.names[k], std::to_string(f.holdout), fmt_stat(f.rmse[k]), fmt_stat(f.mae[k])});
            }
        }
        out.emplace_back("forecast_paths", paths.str());
        out.emplace_back("forecast_metrics", metrics.str());
    }
    return all;
}

std::string render_report(const RunReport& report, OutputFormat format, const RenderOptions& opts) {
    switch (format) {
        case OutputFormat::Markdown: return render_markdown(report, opts);
        case OutputFormat::Json: return report_to_json(report);
        case OutputFormat::Csv: {
            std::string o;
            for (const auto& [name, body] : render_csv_tables(report, opts)) o += "# table: " + name + "\n" + body + "\n";
            return o;
        }
    }
    return {};
}

}  // namespace macrovar
