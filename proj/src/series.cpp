#include "macrovar/series.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "macrovar/error.hpp"

namespace macrovar {

AnnualSeries::AnnualSeries(std::string name, std::string country, int start_year,
                           std::vector<std::optional<double>> values)
    : name_(std::move(name)),
      country_(std::move(country)),
      start_year_(start_year),
      values_(std::move(values)) {
    if (values_.empty()) {
        throw DataError("series '" + name_ + "' is empty");
    }
}

AnnualSeries AnnualSeries::observed(std::string name, std::string country, int start_year,
                                    std::span<const double> values) {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    return AnnualSeries(std::move(name), std::move(country), start_year, std::move(v));
}

bool AnnualSeries::fully_observed() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

std::size_t AnnualSeries::observed_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

std::vector<double> AnnualSeries::dense() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!values_[i]) {
            throw DataError("series '" + name_ + "' has a missing value in " +
                            std::to_string(start_year_ + static_cast<int>(i)));
        }
        out.push_back(*values_[i]);
    }
    return out;
}

AnnualSeries AnnualSeries::slice(int first_year, int last_year) const {
    if (first_year < start_year_ || last_year > end_year() || first_year > last_year) {
        throw DataError("slice " + std::to_string(first_year) + "-" + std::to_string(last_year) +
                        " outside series '" + name_ + "'");
    }
    auto b = values_.begin() + (first_year - start_year_);
    auto e = values_.begin() + (last_year - start_year_ + 1);
    return AnnualSeries(name_, country_, first_year, std::vector<std::optional<double>>(b, e));
}

AnnualSeries AnnualSeries::renamed(std::string name) const {
    return AnnualSeries(std::move(name), country_, start_year_, values_);
}

CountryPanel::CountryPanel(std::string country, std::vector<AnnualSeries> variables,
                           std::vector<std::size_t> ordering, bool differenced)
    : country_(std::move(country)),
      variables_(std::move(variables)),
      ordering_(std::move(ordering)),
      differenced_(differenced) {
    if (variables_.empty()) {
        throw DataError("panel for '" + country_ + "' has no variables");
    }
    const auto& first = variables_.front();
    std::set<std::string> seen;
    for (const auto& s : variables_) {
        if (s.start_year() != first.start_year() || s.size() != first.size()) {
            throw DataError("panel variables for '" + country_ + "' do not share a year range");
        }
        if (!s.fully_observed()) {
            throw DataError("panel variable '" + s.name() + "' has missing values");
        }
        if (!seen.insert(s.name()).second) {
            throw DataError("duplicate variable name '" + s.name() + "'");
        }
        if (!differenced_ && s.name() == "hdi") {
            for (const auto& v : s.values()) {
                if (*v < 0.0 || *v > 1.0) {
                    throw DataError("hdi value " + std::to_string(*v) + " outside [0, 1]");
                }
            }
        }
    }
    if (ordering_.size() != variables_.size()) {
        throw DataError("ordering must reference each variable exactly once");
    }
    std::vector<std::size_t> sorted = ordering_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) {
            throw DataError("ordering must reference each variable exactly once");
        }
    }
}

CountryPanel::CountryPanel(std::string country, std::vector<AnnualSeries> variables)
    : CountryPanel(std::move(country), variables, [&] {
          std::vector<std::size_t> o(variables.size());
          std::iota(o.begin(), o.end(), std::size_t{0});
          return o;
      }()) {}

std::vector<std::string> CountryPanel::names() const {
    std::vector<std::string> out;
    for (const auto& s : variables_) out.push_back(s.name());
    return out;
}

std::size_t CountryPanel::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name() == name) return i;
    }
    throw DataError("no variable named '" + name + "'");
}

Eigen::MatrixXd CountryPanel::matrix() const {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(num_obs()), static_cast<Eigen::Index>(num_vars()));
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        const auto& v = variables_[j].values();
        for (std::size_t t = 0; t < v.size(); ++t) {
            m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = *v[t];
        }
    }
    return m;
}

CountryPanel CountryPanel::with_ordering(std::vector<std::size_t> ordering) const {
    return CountryPanel(country_, variables_, std::move(ordering), differenced_);
}

AnnualSeries interpolate_gaps(const AnnualSeries& series) {
    const auto& v = series.values();
    if (series.observed_count() < 2) {
        throw DataError("insufficient data: series '" + series.name() + "' has fewer than two observations");
    }
    if (!v.front() || !v.back()) {
        throw DataError("cannot extrapolate: series '" + series.name() +
                        "' has missing leading or trailing values");
    }
    std::vector<std::optional<double>> out = v;
    std::size_t a = 0;
    for (std::size_t t = 1; t < v.size(); ++t) {
        if (!v[t]) continue;
        if (t - a > 1) {
            const double ya = *v[a];
            const double yb = *v[t];
            const double span = static_cast<double>(t - a);
            for (std::size_t s = a + 1; s < t; ++s) {
                out[s] = ya + (yb - ya) * static_cast<double>(s - a) / span;
            }
        }
        a = t;
    }
    return AnnualSeries(series.name(), series.country(), series.start_year(), std::move(out));
}

AnnualSeries first_difference(const AnnualSeries& series) {
    if (series.size() < 2) {
        throw DataError("cannot difference series '" + series.name() + "' of length < 2");
    }
    const auto x = series.dense();
    std::vector<std::optional<double>> d(x.size() - 1);
    for (std::size_t t = 0; t + 1 < x.size(); ++t) d[t] = x[t + 1] - x[t];
    return AnnualSeries(series.name(), series.country(), series.start_year() + 1, std::move(d));
}

AnnualSeries cumulate(const AnnualSeries& diffs, double initial) {
    const auto d = diffs.dense();
    std::vector<std::optional<double>> out(d.size() + 1);
    double acc = initial;
    out[0] = acc;
    for (std::size_t t = 0; t < d.size(); ++t) {
        acc += d[t];
        out[t + 1] = acc;
    }
    return AnnualSeries(diffs.name(), diffs.country(), diffs.start_year() - 1, std::move(out));
}

CountryPanel align_panel(const std::vector<AnnualSeries>& series_list) {
    if (series_list.empty()) {
        throw DataError("align_panel: no series given");
    }
    const std::string& country = series_list.front().country();
    int lo = series_list.front().start_year();
    int hi = series_list.front().end_year();
    for (const auto& s : series_list) {
        if (s.country() != country) {
            throw DataError("align_panel: series from different countries ('" + country + "', '" +
                            s.country() + "')");
        }
        // Observed span of each series; leading/trailing gaps are trimmed, never extrapolated.
        const auto& v = s.values();
        std::size_t first = 0;
        while (first < v.size() && !v[first]) ++first;
        if (first == v.size()) {
            throw DataError("align_panel: series '" + s.name() + "' has no observations");
        }
        std::size_t last = v.size() - 1;
        while (!v[last]) --last;
        lo = std::max(lo, s.start_year() + static_cast<int>(first));
        hi = std::min(hi, s.start_year() + static_cast<int>(last));
    }
    if (lo > hi) {
        throw DataError("align_panel: empty overlap between series for '" + country + "'");
    }
    std::vector<AnnualSeries> aligned;
    aligned.reserve(series_list.size());
    for (const auto& s : series_list) {
        auto cut = s.slice(lo, hi);
        aligned.push_back(cut.fully_observed() ? cut : interpolate_gaps(cut));
    }
    return CountryPanel(country, std::move(aligned));
}

CountryPanel difference_panel(const CountryPanel& panel) {
    std::vector<AnnualSeries> d;
    for (const auto& s : panel.variables()) d.push_back(first_difference(s));
    return CountryPanel(panel.country(), std::move(d), panel.ordering(), true);
}

std::optional<std::size_t> resolve_variable(const CountryPanel& panel, const std::string& label) {
    const auto names = panel.names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == label) return i;
    }
    // Short aliases match a trailing "_<label>" component, e.g. "edu" -> "gov_exp_edu".
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& n = names[i];
        if (n.size() > label.size() && n.compare(n.size() - label.size(), label.size(), label) == 0 &&
            n[n.size() - label.size() - 1] == '_') {
            if (hit) return std::nullopt;
            hit = i;
        }
    }
    return hit;
}

std::vector<std::size_t> parse_ordering(const CountryPanel& panel,
                                        const std::vector<std::string>& labels) {
    std::vector<std::size_t> order;
    for (const auto& l : labels) {
        auto idx = resolve_variable(panel, l);
        if (!idx) throw DataError("unknown variable in ordering: '" + l + "'");
        order.push_back(*idx);
    }
    if (order.size() != panel.num_vars()) {
        throw DataError("ordering must list every variable exactly once");
    }
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DataError("ordering must list every variable exactly once");
    }
    return order;
}

}  // namespace macrovar
