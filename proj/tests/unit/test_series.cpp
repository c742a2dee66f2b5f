#include <doctest.h>

#include <random>

#include "macrovar/error.hpp"
#include "macrovar/series.hpp"

using namespace macrovar;
using std::nullopt;
using Opt = std::vector<std::optional<double>>;

namespace {

AnnualSeries make(Opt v, int start = 2000, std::string name = "x") {
    return AnnualSeries(std::move(name), "c", start, std::move(v));
}

std::vector<double> dense(const AnnualSeries& s) { return s.dense(); }

}  // namespace

TEST_CASE("AnnualSeries rejects empty value lists") {
    CHECK_THROWS_AS(make({}), DataError);
}

TEST_CASE("interpolate_gaps fills interior gaps on a straight line") {
    CHECK(dense(interpolate_gaps(make({2.0, nullopt, 4.0}))) == std::vector<double>{2.0, 3.0, 4.0});
    CHECK(dense(interpolate_gaps(make({1.0, nullopt, nullopt, 4.0}))) == std::vector<double>{1.0, 2.0, 3.0, 4.0});
}

TEST_CASE("interpolate_gaps refuses to extrapolate or work from one point") {
    CHECK_THROWS_WITH_AS(interpolate_gaps(make({nullopt, 2.0, 3.0})), doctest::Contains("cannot extrapolate"),
                         DataError);
    CHECK_THROWS_WITH_AS(interpolate_gaps(make({1.0, 2.0, nullopt})), doctest::Contains("cannot extrapolate"),
                         DataError);
    CHECK_THROWS_WITH_AS(interpolate_gaps(make({nullopt, 2.0, nullopt})), doctest::Contains("insufficient data"),
                         DataError);
}

TEST_CASE("interpolate_gaps keeps observed values and is idempotent over random gap patterns") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    std::bernoulli_distribution gap(0.3);
    for (int rep = 0; rep < 200; ++rep) {
        Opt v(25);
        for (auto& x : v) x = normal(rng);
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            if (gap(rng)) v[i] = nullopt;
        }
        const auto once = interpolate_gaps(make(v));
        CHECK(once.fully_observed());
        CHECK(interpolate_gaps(once) == once);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i]) CHECK(*once.values()[i] == *v[i]);
        }
    }
}

TEST_CASE("first_difference and cumulate") {
    CHECK(dense(first_difference(AnnualSeries::observed("x", "c", 2000, std::vector<double>{5, 5, 5}))) ==
          std::vector<double>{0.0, 0.0});
    const auto d = first_difference(AnnualSeries::observed("x", "c", 2000, std::vector<double>{1, 3, 6}));
    CHECK(dense(d) == std::vector<double>{2.0, 3.0});
    CHECK(d.start_year() == 2001);
    CHECK_THROWS_AS(first_difference(AnnualSeries::observed("x", "c", 2000, std::vector<double>{1})), DataError);
    CHECK_THROWS_AS(first_difference(make({1.0, nullopt, 2.0})), DataError);
}

TEST_CASE("difference of a cumulated series round-trips, and cumulating a random walk's differences recovers it") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> x(40);
        for (auto& v : x) v = normal(rng);
        const auto xs = AnnualSeries::observed("x", "c", 1990, x);
        const double x0 = normal(rng);
        const auto back = dense(first_difference(cumulate(xs, x0)));
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));

        std::vector<double> walk{x0};
        for (double v : x) walk.push_back(walk.back() + v);
        const auto ws = AnnualSeries::observed("w", "c", 1990, walk);
        const auto rebuilt = dense(cumulate(first_difference(ws), walk.front()));
        for (std::size_t i = 0; i < walk.size(); ++i) CHECK(std::abs(rebuilt[i] - walk[i]) < 1e-12 * (1 + std::abs(walk[i])));
    }
}

TEST_CASE("align_panel trims to the common span") {
    std::vector<double> a(33), b(25);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.3 + 0.01 * static_cast<double>(i);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<double>(i);
    auto p = align_panel({AnnualSeries::observed("hdi", "c", 1992, a), AnnualSeries::observed("y", "c", 1992, a)});
    CHECK(p.num_obs() == 33);
    p = align_panel({AnnualSeries::observed("hdi", "c", 1992, a), AnnualSeries::observed("y", "c", 2000, b)});
    CHECK(p.start_year() == 2000);
    CHECK(p.end_year() == 2024);
    CHECK(p.ordering() == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_WITH_AS(align_panel({AnnualSeries::observed("a", "c", 1950, b), AnnualSeries::observed("b", "c", 2000, b)}),
                         doctest::Contains("empty overlap"), DataError);
    CHECK_THROWS_AS(align_panel({AnnualSeries::observed("a", "c", 2000, b), AnnualSeries::observed("b", "d", 2000, b)}),
                    DataError);
}

TEST_CASE("align_panel output satisfies the panel invariants for random gap patterns") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> start(1990, 1996), len(20, 30);
    std::bernoulli_distribution gap(0.25);
    std::uniform_real_distribution<double> unif(0.1, 0.9);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<AnnualSeries> in;
        for (const char* name : {"hdi", "gov_exp_health", "gov_exp_edu"}) {
            Opt v(static_cast<std::size_t>(len(rng)));
            for (auto& x : v) x = gap(rng) ? std::optional<double>() : std::optional<double>(unif(rng));
            in.emplace_back(name, "c", start(rng), v);
        }
        try {
            const auto p = align_panel(in);
            for (const auto& s : p.variables()) {
                CHECK(s.fully_observed());
                CHECK(s.start_year() == p.start_year());
                CHECK(s.size() == p.num_obs());
            }
            const auto m = p.matrix();
            CHECK((m.col(0).array() >= 0).all());
            CHECK((m.col(0).array() <= 1).all());
        } catch (const DataError&) {
            // too few observed points left: an error is the contract
        }
    }
}

TEST_CASE("CountryPanel validates its invariants") {
    const std::vector<double> v{0.1, 0.2, 0.3};
    const auto a = AnnualSeries::observed("hdi", "c", 2000, v);
    CHECK_THROWS_AS(CountryPanel("c", {a, a}), DataError);  // duplicate names
    CHECK_THROWS_AS(CountryPanel("c", {a, AnnualSeries::observed("y", "c", 2001, v)}), DataError);
    CHECK_THROWS_AS(CountryPanel("c", {AnnualSeries::observed("hdi", "c", 2000, std::vector<double>{0.5, 1.2, 0.3})}),
                    DataError);
    CHECK_THROWS_AS(CountryPanel("c", {a, a.renamed("y")}, {0, 0}), DataError);
    CHECK_THROWS_AS(CountryPanel("c", {make({0.1, nullopt, 0.3}, 2000, "hdi")}), DataError);
    const CountryPanel ok("c", {a, a.renamed("gov_exp_health")}, {1, 0});
    CHECK(ok.ordering() == std::vector<std::size_t>{1, 0});
    CHECK(ok.matrix().rows() == 3);
    const auto d = difference_panel(CountryPanel("c", {AnnualSeries::observed("hdi", "c", 2000, std::vector<double>{0.5, 0.4, 0.45})}));
    CHECK(d.differenced());
    CHECK(d.matrix()(0, 0) == doctest::Approx(-0.1));
}

TEST_CASE("variable aliases and ordering parsing") {
    const std::vector<double> v{0.1, 0.2, 0.3};
    const CountryPanel p("c", {AnnualSeries::observed("hdi", "c", 2000, v),
                               AnnualSeries::observed("gov_exp_health", "c", 2000, v),
                               AnnualSeries::observed("gov_exp_edu", "c", 2000, v)});
    CHECK(resolve_variable(p, "health") == std::optional<std::size_t>(1));
    CHECK(resolve_variable(p, "gov_exp_edu") == std::optional<std::size_t>(2));
    CHECK_FALSE(resolve_variable(p, "gdp").has_value());
    CHECK(parse_ordering(p, {"edu", "hdi", "health"}) == std::vector<std::size_t>{2, 0, 1});
    CHECK_THROWS_AS(parse_ordering(p, {"hdi", "hdi", "edu"}), DataError);
    CHECK_THROWS_AS(parse_ordering(p, {"hdi", "edu"}), DataError);
}
