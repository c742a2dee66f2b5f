#include "macrovar/report.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "macrovar/error.hpp"

namespace macrovar {

using json = nlohmann::ordered_json;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

const char* library_version() { return "1.0.0"; }

namespace {

// Scalars

json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double as_num(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw DataError("report JSON: bad number '" + s + "'");
    }
    return j.get<double>();
}

json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

std::vector<double> as_nums(const json& j) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(as_num(x));
    return v;
}

json opt_num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }
std::optional<double> as_opt_num(const json& j) {
    if (j.is_null()) return std::nullopt;
    return as_num(j);
}

// Matrices: row-major data plus shape

json mat(const MatrixXd& m) {
    json d = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index k = 0; k < m.cols(); ++k) d.push_back(num(m(i, k)));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(d)}};
}

MatrixXd as_mat(const json& j) {
    const Index r = j.at("rows").get<Index>();
    const Index c = j.at("cols").get<Index>();
    const auto& d = j.at("data");
    if (static_cast<Index>(d.size()) != r * c) throw DataError("report JSON: matrix size mismatch");
    MatrixXd m(r, c);
    for (Index i = 0; i < r; ++i) {
        for (Index k = 0; k < c; ++k) m(i, k) = as_num(d[static_cast<std::size_t>(i * c + k)]);
    }
    return m;
}

json vec(const VectorXd& v) { return nums(std::vector<double>(v.data(), v.data() + v.size())); }
VectorXd as_vec(const json& j) {
    const auto v = as_nums(j);
    return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
}

json mats(const std::vector<MatrixXd>& v) {
    json a = json::array();
    for (const auto& m : v) a.push_back(mat(m));
    return a;
}
std::vector<MatrixXd> as_mats(const json& j) {
    std::vector<MatrixXd> v;
    for (const auto& m : j) v.push_back(as_mat(m));
    return v;
}

// Result types

json to(const AdfResult& r) {
    return {{"statistic", num(r.statistic)}, {"p_value", num(r.p_value)},   {"cv_1pct", num(r.cv_1pct)},
            {"cv_5pct", num(r.cv_5pct)},     {"cv_10pct", num(r.cv_10pct)}, {"lags_used", r.lags_used},
            {"deterministic", "constant"},   {"n_obs", r.n_obs},            {"lag_rule", r.lag_rule}};
}
void from(const json& j, AdfResult& r) {
    r.statistic = as_num(j.at("statistic"));
    r.p_value = as_num(j.at("p_value"));
    r.cv_1pct = as_num(j.at("cv_1pct"));
    r.cv_5pct = as_num(j.at("cv_5pct"));
    r.cv_10pct = as_num(j.at("cv_10pct"));
    r.lags_used = j.at("lags_used").get<int>();
    r.n_obs = j.at("n_obs").get<int>();
    r.lag_rule = j.at("lag_rule").get<std::string>();
}

json to(const JohansenResult& r) {
    return {{"eigenvalues", nums(r.eigenvalues)},
            {"trace_stats", nums(r.trace_stats)},
            {"max_eigen_stats", nums(r.max_eigen_stats)},
            {"trace_cv_5pct", nums(r.trace_cv_5pct)},
            {"max_eigen_cv_5pct", nums(r.max_eigen_cv_5pct)},
            {"p_values_trace", nums(r.p_values_trace)},
            {"p_values_max", nums(r.p_values_max)},
            {"rank_decision", r.rank_decision},
            {"lags_in_differences", r.lags_in_differences},
            {"n_obs", r.n_obs}};
}
void from(const json& j, JohansenResult& r) {
    r.eigenvalues = as_nums(j.at("eigenvalues"));
    r.trace_stats = as_nums(j.at("trace_stats"));
    r.max_eigen_stats = as_nums(j.at("max_eigen_stats"));
    r.trace_cv_5pct = as_nums(j.at("trace_cv_5pct"));
    r.max_eigen_cv_5pct = as_nums(j.at("max_eigen_cv_5pct"));
    r.p_values_trace = as_nums(j.at("p_values_trace"));
    r.p_values_max = as_nums(j.at("p_values_max"));
    r.rank_decision = j.at("rank_decision").get<int>();
    r.lags_in_differences = j.at("lags_in_differences").get<int>();
    r.n_obs = j.at("n_obs").get<int>();
}

json to(const LagSelection& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        rows.push_back({{"lag", r.lag},     {"log_l", num(r.log_l)}, {"lr", opt_num(r.lr)}, {"fpe", num(r.fpe)},
                        {"aic", num(r.aic)}, {"sc", num(r.sc)},       {"hq", num(r.hq)}});
    }
    return {{"rows", std::move(rows)}, {"n_obs", s.n_obs},     {"lr_lag", s.lr_lag}, {"fpe_lag", s.fpe_lag},
            {"aic_lag", s.aic_lag},    {"sc_lag", s.sc_lag},   {"hq_lag", s.hq_lag}};
}
void from(const json& j, LagSelection& s) {
    for (const auto& r : j.at("rows")) {
        LagRow row;
        row.lag = r.at("lag").get<int>();
        row.log_l = as_num(r.at("log_l"));
        row.lr = as_opt_num(r.at("lr"));
        row.fpe = as_num(r.at("fpe"));
        row.aic = as_num(r.at("aic"));
        row.sc = as_num(r.at("sc"));
        row.hq = as_num(r.at("hq"));
        s.rows.push_back(row);
    }
    s.n_obs = j.at("n_obs").get<int>();
    s.lr_lag = j.at("lr_lag").get<int>();
    s.fpe_lag = j.at("fpe_lag").get<int>();
    s.aic_lag = j.at("aic_lag").get<int>();
    s.sc_lag = j.at("sc_lag").get<int>();
    s.hq_lag = j.at("hq_lag").get<int>();
}

json to(const EquationStats& e) {
    json coefs = json::array();
    for (const auto& c : e.coef_table) {
        coefs.push_back({{"name", c.name},
                         {"coefficient", num(c.coefficient)},
                         {"std_error", num(c.std_error)},
                         {"t_stat", num(c.t_stat)}});
    }
    return {{"variable", e.variable},
            {"r_squared", num(e.r_squared)},
            {"adj_r_squared", num(e.adj_r_squared)},
            {"ssr", num(e.ssr)},
            {"se_equation", num(e.se_equation)},
            {"f_stat", num(e.f_stat)},
            {"log_likelihood", num(e.log_likelihood)},
            {"coef_table", std::move(coefs)}};
}
void from(const json& j, EquationStats& e) {
    e.variable = j.at("variable").get<std::string>();
    e.r_squared = as_num(j.at("r_squared"));
    e.adj_r_squared = as_num(j.at("adj_r_squared"));
    e.ssr = as_num(j.at("ssr"));
    e.se_equation = as_num(j.at("se_equation"));
    e.f_stat = as_num(j.at("f_stat"));
    e.log_likelihood = as_num(j.at("log_likelihood"));
    for (const auto& c : j.at("coef_table")) {
        e.coef_table.push_back({c.at("name").get<std::string>(), as_num(c.at("coefficient")),
                                as_num(c.at("std_error")), as_num(c.at("t_stat"))});
    }
}

json to(const VarEstimate& v) {
    json eqs = json::array();
    for (const auto& e : v.per_equation) eqs.push_back(to(e));
    return {{"names", v.names},
            {"ordering", v.ordering},
            {"lags", v.lags},
            {"constant", v.constant},
            {"first_year", v.first_year},
            {"A", mats(v.A)},
            {"c", vec(v.c)},
            {"coef", mat(v.coef)},
            {"data", mat(v.data)},
            {"X", mat(v.X)},
            {"Y", mat(v.Y)},
            {"residuals", mat(v.residuals)},
            {"sigma_ml", mat(v.sigma_ml)},
            {"sigma_ls", mat(v.sigma_ls)},
            {"xtx_inv", mat(v.xtx_inv)},
            {"coef_cov", mat(v.coef_cov)},
            {"per_equation", std::move(eqs)},
            {"log_likelihood", num(v.log_likelihood)},
            {"aic", num(v.aic)},
            {"sc", num(v.sc)},
            {"hq", num(v.hq)}};
}
void from(const json& j, VarEstimate& v) {
    v.names = j.at("names").get<std::vector<std::string>>();
    v.ordering = j.at("ordering").get<std::vector<std::size_t>>();
    v.lags = j.at("lags").get<int>();
    v.constant = j.at("constant").get<bool>();
    v.first_year = j.at("first_year").get<int>();
    v.A = as_mats(j.at("A"));
    v.c = as_vec(j.at("c"));
    v.coef = as_mat(j.at("coef"));
    v.data = as_mat(j.at("data"));
    v.X = as_mat(j.at("X"));
    v.Y = as_mat(j.at("Y"));
    v.residuals = as_mat(j.at("residuals"));
    v.sigma_ml = as_mat(j.at("sigma_ml"));
    v.sigma_ls = as_mat(j.at("sigma_ls"));
    v.xtx_inv = as_mat(j.at("xtx_inv"));
    v.coef_cov = as_mat(j.at("coef_cov"));
    for (const auto& e : j.at("per_equation")) {
        EquationStats s;
        from(e, s);
        v.per_equation.push_back(std::move(s));
    }
    v.log_likelihood = as_num(j.at("log_likelihood"));
    v.aic = as_num(j.at("aic"));
    v.sc = as_num(j.at("sc"));
    v.hq = as_num(j.at("hq"));
}

json to(const std::vector<WaldBlockResult>& v) {
    json a = json::array();
    for (const auto& w : v) {
        a.push_back({{"dependent", w.dependent},
                     {"excluded", w.excluded},
                     {"chi_sq", num(w.chi_sq)},
                     {"df", w.df},
                     {"p_value", num(w.p_value)}});
    }
    return a;
}
void from(const json& j, std::vector<WaldBlockResult>& v) {
    for (const auto& w : j) {
        v.push_back({w.at("dependent").get<std::string>(), w.at("excluded").get<std::string>(),
                     as_num(w.at("chi_sq")), w.at("df").get<int>(), as_num(w.at("p_value"))});
    }
}

json to(const StabilityResult& s) {
    json roots = json::array();
    for (const auto& z : s.roots) roots.push_back(json::array({num(z.real()), num(z.imag())}));
    return {{"roots", std::move(roots)}, {"moduli", nums(s.moduli)}, {"stable", s.stable}};
}
void from(const json& j, StabilityResult& s) {
    for (const auto& z : j.at("roots")) s.roots.emplace_back(as_num(z.at(0)), as_num(z.at(1)));
    s.moduli = as_nums(j.at("moduli"));
    s.stable = j.at("stable").get<bool>();
}

json to(const CrossCorrResult& c) { return {{"by_lag", mats(c.by_lag)}, {"band", num(c.band)}}; }
void from(const json& j, CrossCorrResult& c) {
    c.by_lag = as_mats(j.at("by_lag"));
    c.band = as_num(j.at("band"));
}

json to_rows(const std::vector<LmRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        a.push_back({{"lag", r.lag},
                     {"cumulative", r.cumulative},
                     {"lre_stat", num(r.lre_stat)},
                     {"df", r.df},
                     {"p_lre", num(r.p_lre)},
                     {"rao_f", num(r.rao_f)},
                     {"df_num", num(r.df_num)},
                     {"df_denom", num(r.df_denom)},
                     {"p_rao", num(r.p_rao)}});
    }
    return a;
}
std::vector<LmRow> as_rows(const json& j) {
    std::vector<LmRow> v;
    for (const auto& r : j) {
        LmRow row;
        row.lag = r.at("lag").get<int>();
        row.cumulative = r.at("cumulative").get<bool>();
        row.lre_stat = as_num(r.at("lre_stat"));
        row.df = r.at("df").get<int>();
        row.p_lre = as_num(r.at("p_lre"));
        row.rao_f = as_num(r.at("rao_f"));
        row.df_num = as_num(r.at("df_num"));
        row.df_denom = as_num(r.at("df_denom"));
        row.p_rao = as_num(r.at("p_rao"));
        v.push_back(row);
    }
    return v;
}

json to(const LmResult& r) { return {{"at_lag", to_rows(r.at_lag)}, {"cumulative", to_rows(r.cumulative)}}; }
void from(const json& j, LmResult& r) {
    r.at_lag = as_rows(j.at("at_lag"));
    r.cumulative = as_rows(j.at("cumulative"));
}

json to(const StructuralSet& s) {
    json out = {{"names", s.names},
                {"ordering", s.ordering},
                {"horizon", s.horizon},
                {"chol_p", mat(s.chol_p)},
                {"ma", mats(s.ma)},
                {"irf", mats(s.irf)},
                {"unstable", s.unstable},
                {"fevd", {{"shares", mats(s.fevd.shares)}, {"std_error", mat(s.fevd.std_error)}}},
                {"hist",
                 {{"first_year", s.hist.first_year},
                  {"actual", mat(s.hist.actual)},
                  {"baseline", mat(s.hist.baseline)},
                  {"contributions", mats(s.hist.contributions)}}}};
    if (s.bands) {
        out["bands"] = {{"lower", mats(s.bands->lower)},
                        {"upper", mats(s.bands->upper)},
                        {"draws", s.bands->draws},
                        {"seed", s.bands->seed},
                        {"method", s.bands->method}};
    } else {
        out["bands"] = nullptr;
    }
    return out;
}
void from(const json& j, StructuralSet& s) {
    s.names = j.at("names").get<std::vector<std::string>>();
    s.ordering = j.at("ordering").get<std::vector<std::size_t>>();
    s.horizon = j.at("horizon").get<int>();
    s.chol_p = as_mat(j.at("chol_p"));
    s.ma = as_mats(j.at("ma"));
    s.irf = as_mats(j.at("irf"));
    s.unstable = j.at("unstable").get<bool>();
    s.fevd.shares = as_mats(j.at("fevd").at("shares"));
    s.fevd.std_error = as_mat(j.at("fevd").at("std_error"));
    const auto& h = j.at("hist");
    s.hist.first_year = h.at("first_year").get<int>();
    s.hist.actual = as_mat(h.at("actual"));
    s.hist.baseline = as_mat(h.at("baseline"));
    s.hist.contributions = as_mats(h.at("contributions"));
    if (!j.at("bands").is_null()) {
        const auto& b = j.at("bands");
        IrfBands bands;
        bands.lower = as_mats(b.at("lower"));
        bands.upper = as_mats(b.at("upper"));
        bands.draws = b.at("draws").get<int>();
        bands.seed = b.at("seed").get<std::uint64_t>();
        bands.method = b.at("method").get<std::string>();
        s.bands = std::move(bands);
    }
}

json to(const ForecastEvaluation& f) {
    return {{"names", f.names},       {"holdout", f.holdout},   {"first_year", f.first_year},
            {"forecast", mat(f.forecast)}, {"actual", mat(f.actual)}, {"rmse", nums(f.rmse)},
            {"mae", nums(f.mae)}};
}
void from(const json& j, ForecastEvaluation& f) {
    f.names = j.at("names").get<std::vector<std::string>>();
    f.holdout = j.at("holdout").get<int>();
    f.first_year = j.at("first_year").get<int>();
    f.forecast = as_mat(j.at("forecast"));
    f.actual = as_mat(j.at("actual"));
    f.rmse = as_nums(j.at("rmse"));
    f.mae = as_nums(j.at("mae"));
}

json to(const std::vector<AdfResult>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to(r));
    return a;
}
void from(const json& j, std::vector<AdfResult>& v) {
    for (const auto& r : j) {
        AdfResult a;
        from(r, a);
        v.push_back(std::move(a));
    }
}

template <class T>
json section(const Section<T>& s) {
    if (s.value) return {{"value", to(*s.value)}};
    return {{"skipped", s.skipped}};
}

template <class T>
void read_section(const json& j, Section<T>& s) {
    if (j.contains("value")) {
        T v{};
        from(j.at("value"), v);
        s.value = std::move(v);
    } else {
        s.skip(j.at("skipped").get<std::string>());
    }
}

json to(const CountryReport& c) {
    return {{"country", c.country},
            {"source", c.source},
            {"first_year", c.first_year},
            {"last_year", c.last_year},
            {"n_obs", c.n_obs},
            {"names", c.names},
            {"units", c.units},
            {"warnings", c.warnings},
            {"adf_levels", section(c.adf_levels)},
            {"adf_differences", section(c.adf_differences)},
            {"johansen", section(c.johansen)},
            {"johansen_sample", c.johansen_sample},
            {"johansen_caveat", c.johansen_caveat},
            {"lag_selection", section(c.lag_selection)},
            {"var", section(c.var)},
            {"var_sample", c.var_sample},
            {"var_lag_note", c.var_lag_note},
            {"granger", section(c.granger)},
            {"stability", section(c.stability)},
            {"cross_correlations", section(c.cross_correlations)},
            {"lm", section(c.lm)},
            {"structural", section(c.structural)},
            {"forecast", section(c.forecast)}};
}
void from(const json& j, CountryReport& c) {
    c.country = j.at("country").get<std::string>();
    c.source = j.at("source").get<std::string>();
    c.first_year = j.at("first_year").get<int>();
    c.last_year = j.at("last_year").get<int>();
    c.n_obs = j.at("n_obs").get<int>();
    c.names = j.at("names").get<std::vector<std::string>>();
    c.units = j.at("units").get<std::vector<std::string>>();
    c.warnings = j.at("warnings").get<std::vector<std::string>>();
    read_section(j.at("adf_levels"), c.adf_levels);
    read_section(j.at("adf_differences"), c.adf_differences);
    read_section(j.at("johansen"), c.johansen);
    c.johansen_sample = j.at("johansen_sample").get<std::string>();
    c.johansen_caveat = j.at("johansen_caveat").get<std::string>();
    read_section(j.at("lag_selection"), c.lag_selection);
    read_section(j.at("var"), c.var);
    c.var_sample = j.at("var_sample").get<std::string>();
    c.var_lag_note = j.at("var_lag_note").get<std::string>();
    read_section(j.at("granger"), c.granger);
    read_section(j.at("stability"), c.stability);
    read_section(j.at("cross_correlations"), c.cross_correlations);
    read_section(j.at("lm"), c.lm);
    read_section(j.at("structural"), c.structural);
    read_section(j.at("forecast"), c.forecast);
}

}  // namespace

std::string report_to_json(const RunReport& report) {
    json countries = json::array();
    for (const auto& c : report.countries) countries.push_back(to(c));
    const auto& p = report.provenance;
    json doc = {{"provenance",
                 {{"tool", p.tool},
                  {"version", p.version},
                  {"data_source", p.data_source},
                  {"config", p.config},
                  {"libraries", p.libraries},
                  {"notes", p.notes}}},
                {"countries", std::move(countries)}};
    return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("report JSON: ") + e.what());
    }
    RunReport r;
    try {
        const auto& p = doc.at("provenance");
        r.provenance.tool = p.at("tool").get<std::string>();
        r.provenance.version = p.at("version").get<std::string>();
        r.provenance.data_source = p.at("data_source").get<std::string>();
        r.provenance.config = p.at("config").get<std::string>();
        r.provenance.libraries = p.at("libraries").get<std::vector<std::string>>();
        r.provenance.notes = p.at("notes").get<std::vector<std::string>>();
        for (const auto& c : doc.at("countries")) {
            CountryReport cr;
            from(c, cr);
            r.countries.push_back(std::move(cr));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("report JSON: ") + e.what());
    }
    return r;
}

}  // namespace macrovar
