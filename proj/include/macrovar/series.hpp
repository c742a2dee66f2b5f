#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace macrovar {

/**
 * @brief One annual series for one country.
 *
 * Years are consecutive integers starting at start_year; a missing
 * observation is an empty optional.
 */
class AnnualSeries {
public:
    AnnualSeries(std::string name, std::string country, int start_year,
                 std::vector<std::optional<double>> values);

    /// Convenience constructor for fully observed data.
    static AnnualSeries observed(std::string name, std::string country, int start_year,
                                 std::span<const double> values);

    const std::string& name() const noexcept { return name_; }
    const std::string& country() const noexcept { return country_; }
    int start_year() const noexcept { return start_year_; }
    int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<std::optional<double>>& values() const noexcept { return values_; }

    bool fully_observed() const noexcept;
    std::size_t observed_count() const noexcept;

    /// Dense copy of the values; throws DataError if any value is missing.
    std::vector<double> dense() const;

    /// Sub-range [first_year, last_year] (inclusive). Years must lie inside the series.
    AnnualSeries slice(int first_year, int last_year) const;

    AnnualSeries renamed(std::string name) const;

    friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

private:
    std::string name_;
    std::string country_;
    int start_year_;
    std::vector<std::optional<double>> values_;
};

/**
 * @brief Aligned multivariate dataset for one country.
 *
 * Every member series shares the same year range and is fully observed.
 * `ordering` is the recursive-identification order used for Cholesky
 * factorisation: ordering[0] is the index of the variable shocked first.
 * The HDI range check applies to level panels only.
 */
class CountryPanel {
public:
    CountryPanel(std::string country, std::vector<AnnualSeries> variables,
                 std::vector<std::size_t> ordering, bool differenced = false);
    CountryPanel(std::string country, std::vector<AnnualSeries> variables);

    const std::string& country() const noexcept { return country_; }
    const std::vector<AnnualSeries>& variables() const noexcept { return variables_; }
    const std::vector<std::size_t>& ordering() const noexcept { return ordering_; }

    std::size_t num_vars() const noexcept { return variables_.size(); }
    std::size_t num_obs() const noexcept { return variables_.front().size(); }
    int start_year() const noexcept { return variables_.front().start_year(); }
    int end_year() const noexcept { return variables_.front().end_year(); }
    bool differenced() const noexcept { return differenced_; }

    std::vector<std::string> names() const;
    std::size_t index_of(const std::string& name) const;

    /// T x K data matrix, columns in variable order.
    Eigen::MatrixXd matrix() const;

    CountryPanel with_ordering(std::vector<std::size_t> ordering) const;

private:
    std::string country_;
    std::vector<AnnualSeries> variables_;
    std::vector<std::size_t> ordering_;
    bool differenced_ = false;
};

/// Fills interior gaps by linear interpolation between the nearest observed neighbours.
AnnualSeries interpolate_gaps(const AnnualSeries& series);

/// y_{t+1} - y_t; the result starts one year later.
AnnualSeries first_difference(const AnnualSeries& series);

/// Inverse of first_difference: x0, x0 + d_0, x0 + d_0 + d_1, ...
AnnualSeries cumulate(const AnnualSeries& diffs, double initial);

/// Trims to the common fully observed year span (after interior interpolation).
CountryPanel align_panel(const std::vector<AnnualSeries>& series_list);

/// First-differences every variable of a panel, keeping names and ordering.
CountryPanel difference_panel(const CountryPanel& panel);

/// Resolves a user-facing variable label ("health", "gov_exp_health", ...) to an index.
std::optional<std::size_t> resolve_variable(const CountryPanel& panel, const std::string& label);

/// Parses an ordering list such as {"hdi","health","edu"} into a permutation.
std::vector<std::size_t> parse_ordering(const CountryPanel& panel,
                                        const std::vector<std::string>& labels);

}  // namespace macrovar
