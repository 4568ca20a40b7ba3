#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "signet/balance_metrics.hpp"
#include "signet/effectiveness_stats.hpp"
#include "signet/io.hpp"

using namespace signet;

namespace {

io::SessionTable load(const char* file) { return io::read_session_table_file(std::string(SIGNET_DATA_DIR) + "/" + file); }

struct Series {
    std::vector<double> session, rate, bills, coalition, party;
};

Series series(const io::SessionTable& t) {
    const std::span<const SessionRecord> r = t.records;
    return {session_series(r, [](const auto& s) { return s.session; }),
            session_series(r, [](const auto& s) { return s.passage_rate; }),
            session_series(r, [](const auto& s) { return s.bills_introduced; }),
            session_series(r, [](const auto& s) { return s.coalition_control; }),
            session_series(r, [](const auto& s) { return s.party_control; })};
}

} // namespace

TEST_CASE("party control", "[effectiveness_stats]") {
    CHECK(party_control(59, 41) == 18);
    CHECK(party_control(50, 50) == 0);
    CHECK(party_control(0, 0) == 0);
    CHECK_THROWS(party_control(-1, 3));
}

TEST_CASE("coalition control", "[effectiveness_stats]") {
    CHECK(round_half_up(coalition_control(26, 33), 3) == 0.559);
    CHECK(coalition_control(0, 50) == 1.0);
    CHECK(coalition_control(3, 3) == 0.5);
    CHECK_THROWS_AS(coalition_control(0, 0), UndefinedError);
}

TEST_CASE("coalition partisanship from a partition", "[effectiveness_stats]") {
    using enum Party;
    const NodeAttributes attrs{democrat, democrat, republican, independent, republican, republican, democrat};
    // group 1 has 4 members: R, I, R, R
    const Partition p(std::vector<std::uint8_t>{0, 0, 1, 1, 1, 1, 0});
    const auto s = coalition_partisanship(p, attrs);
    CHECK(s.side == 1);
    CHECK(s.size == 4);
    CHECK(s.reps == 3);
    CHECK(s.dems == 0);
    CHECK(s.independents == 1);
    CHECK(s.control == 1.0);

    // tie goes to node 0's group
    const NodeAttributes four{democrat, republican, republican, democrat};
    const auto tie = coalition_partisanship(Partition(std::vector<std::uint8_t>{1, 1, 0, 0}), four);
    CHECK(tie.side == 1);
    CHECK(tie.control == 0.5);

    const NodeAttributes indep{independent, independent, democrat};
    CHECK_THROWS_AS(coalition_partisanship(Partition(std::vector<std::uint8_t>{0, 0, 1}), indep), UndefinedError);
    CHECK_THROWS(coalition_partisanship(Partition(2, 0), indep));
}

TEST_CASE("session records validate and derive", "[effectiveness_stats]") {
    const auto s = make_session_record(96, 59, 41, 60, 26, 33, 3480, 257);
    CHECK(s.party_control == 18);
    CHECK(s.passage_rate == 257.0 / 3480.0);
    CHECK(round_half_up(s.coalition_control, 3) == 0.559);
    CHECK_THROWS(make_session_record(1, 1, 1, 1, 1, 1, 0, 0));
    CHECK_THROWS(make_session_record(1, 1, 1, 1, 1, 1, 5, 6));
    CHECK_THROWS(make_session_record(1, 1, 1, 1, 2, 2, 5, 1));
}

TEST_CASE("derived columns match the published tables", "[effectiveness_stats][fixtures]") {
    int mismatches = 0, checked = 0;
    for (const char* file : {"senate_sessions.csv", "house_sessions.csv"}) {
        const auto t = load(file);
        for (std::size_t k = 0; k < t.records.size(); ++k) {
            const auto& r = t.records[k];
            const auto& tab = t.tabulated[k];
            REQUIRE(tab.party_control.has_value());
            REQUIRE(tab.coalition_control.has_value());
            REQUIRE(tab.passage_rate.has_value());
            INFO(file << " session " << r.session);
            CHECK(r.party_control == *tab.party_control);
            CHECK(round_half_up(r.coalition_control, 3) == Catch::Approx(*tab.coalition_control).margin(1e-12));
            CHECK(round_half_up(r.passage_rate, 3) == Catch::Approx(*tab.passage_rate).margin(1e-12));
            mismatches += r.party_control != *tab.party_control;
            mismatches += std::abs(round_half_up(r.coalition_control, 3) - *tab.coalition_control) > 1e-12;
            mismatches += std::abs(round_half_up(r.passage_rate, 3) - *tab.passage_rate) > 1e-12;
            checked += 3;
        }
    }
    CHECK(checked == 114);
    CHECK(mismatches == 0);
}

TEST_CASE("correlations", "[effectiveness_stats]") {
    const auto house = series(load("house_sessions.csv"));
    const auto senate = series(load("senate_sessions.csv"));
    CHECK(pearson_r(house.rate, house.bills).r == Catch::Approx(-0.2925).margin(5e-4));
    CHECK(pearson_r(senate.rate, senate.bills).r == Catch::Approx(-0.0793).margin(5e-4));
    CHECK(pearson_r(house.bills, house.session).r == Catch::Approx(-0.3449).margin(5e-4));
    CHECK(pearson_r(senate.bills, senate.session).r == Catch::Approx(0.1927).margin(5e-4));
    CHECK(round_half_up(pearson_r(house.rate, house.bills).r, 2) == -0.29);
    CHECK(round_half_up(pearson_r(senate.bills, senate.session).r, 2) == 0.19);
    CHECK(pearson_r(house.rate, house.bills).p > 0.05);

    const std::vector<double> x{1, 2, 3, 4, 5};
    const auto same = pearson_r(x, x);
    CHECK(same.r == Catch::Approx(1.0).margin(1e-15));
    CHECK(same.p < 1e-12);
    const std::vector<double> flat{2, 2, 2, 2, 2};
    CHECK_THROWS(pearson_r(x, flat));
    CHECK_THROWS(pearson_r(std::vector<double>{1, 2}, std::vector<double>{2, 1}));
}

TEST_CASE("standardized regressions", "[effectiveness_stats]") {
    const auto house = series(load("house_sessions.csv"));
    const auto senate = series(load("senate_sessions.csv"));
    const auto s = ols_standardized(senate.rate, std::vector<NamedSeries>{{"session", senate.session}});
    CHECK(s["session"].beta == Catch::Approx(-0.85285).margin(5e-5));
    CHECK(s["session"].p < 0.01);
    const auto h = ols_standardized(house.rate, std::vector<NamedSeries>{{"session", house.session}});
    CHECK(h["session"].beta == Catch::Approx(-0.52803).margin(5e-5));
    CHECK(h["session"].p < 0.05);
    CHECK(h["session"].p == Catch::Approx(0.0201).margin(5e-4));

    // bivariate beta equals the correlation
    CHECK(std::abs(h["session"].beta - pearson_r(house.rate, house.session).r) < 1e-12);

    // affine rescaling leaves standardized coefficients unchanged
    std::vector<double> scaled = house.session, rate_scaled = house.rate;
    for (auto& v : scaled) v = 3 * v + 7;
    for (auto& v : rate_scaled) v = 0.5 * v - 2;
    const auto h2 = ols_standardized(rate_scaled, std::vector<NamedSeries>{{"session", scaled}, {"coalition", house.coalition}});
    const auto h1 = ols_standardized(house.rate, std::vector<NamedSeries>{{"session", house.session}, {"coalition", house.coalition}});
    CHECK(std::abs(h1["session"].beta - h2["session"].beta) < 1e-10);
    CHECK(std::abs(h1["coalition"].beta - h2["coalition"].beta) < 1e-10);
}

TEST_CASE("rank deficiency names the collinear columns", "[effectiveness_stats]") {
    const std::vector<double> y{1, 3, 2, 5, 4, 6};
    const std::vector<double> a{1, 2, 3, 4, 5, 6}, b{2, 4, 6, 8, 10, 12}, c{0, 1, 0, 1, 1, 0};
    CHECK_THROWS_WITH(ols_standardized(y, std::vector<NamedSeries>{{"a", a}, {"c", c}, {"b", b}}),
                      Catch::Matchers::ContainsSubstring("collinear") &&
                          (Catch::Matchers::ContainsSubstring("a") || Catch::Matchers::ContainsSubstring("b")));
    CHECK_THROWS_WITH(ols_standardized(y, std::vector<NamedSeries>{{"flat", std::vector<double>(6, 1.0)}}),
                      Catch::Matchers::ContainsSubstring("flat"));
    CHECK_THROWS(ols_standardized(std::vector<double>{1, 2}, std::vector<NamedSeries>{{"a", {1, 2}}}));
}

TEST_CASE("coalition mediation in the House", "[effectiveness_stats]") {
    const auto house = series(load("house_sessions.csv"));
    const auto pm = mediation_model(house.session, house.coalition, house.rate);
    CHECK(pm.a.beta == Catch::Approx(0.771263).margin(5e-6));
    CHECK(pm.b.beta == Catch::Approx(0.660922).margin(5e-6));
    CHECK(pm.c_direct.beta == Catch::Approx(-1.037773).margin(5e-6));
    CHECK(pm.indirect == Catch::Approx(0.509745).margin(5e-6));
    CHECK(pm.indirect_se == Catch::Approx(0.245659).margin(5e-6));
    CHECK(significance_stars(pm.a.p) == "**");
    CHECK(significance_stars(pm.b.p) == "*");
    CHECK(significance_stars(pm.indirect_p) == "*");
    CHECK(significance_stars(pm.c_direct.p) == "**");
    CHECK(std::abs(pm.total.beta - (pm.c_direct.beta + pm.indirect)) < 1e-6);
}

TEST_CASE("party control does not mediate", "[effectiveness_stats]") {
    for (const char* file : {"house_sessions.csv", "senate_sessions.csv"}) {
        const auto s = series(load(file));
        const auto pm = mediation_model(s.session, s.party, s.rate);
        INFO(file);
        CHECK(pm.indirect_p >= 0.05);
        CHECK(std::abs(pm.total.beta - (pm.c_direct.beta + pm.indirect)) < 1e-6);
    }
    const auto senate = series(load("senate_sessions.csv"));
    const auto pm = mediation_model(senate.session, senate.coalition, senate.rate);
    CHECK(pm.a.beta == Catch::Approx(0.8332).margin(5e-4));
    CHECK(std::abs(pm.total.beta - (pm.c_direct.beta + pm.indirect)) < 1e-6);
}

TEST_CASE("independent mediator gives no indirect effect", "[effectiveness_stats]") {
    // time and a mediator orthogonal to it
    const std::vector<double> t{1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> m{1, -1, -1, 1, 1, -1, -1, 1};
    const std::vector<double> y{2.0, 1.1, 2.9, 4.2, 4.8, 5.1, 7.3, 7.9};
    const auto pm = mediation_model(t, m, y);
    CHECK(std::abs(pm.a.beta) < 1e-12);
    CHECK(std::abs(pm.indirect) < 1e-12);
}

TEST_CASE("bootstrap interval is seeded and brackets the estimate", "[effectiveness_stats]") {
    const auto house = series(load("house_sessions.csv"));
    MediationOptions opt;
    opt.bootstrap_resamples = 2000;
    opt.seed = 42;
    const auto a = mediation_model(house.session, house.coalition, house.rate, opt);
    const auto b = mediation_model(house.session, house.coalition, house.rate, opt);
    REQUIRE(a.bootstrap.has_value());
    CHECK(a.bootstrap->resamples == 2000);
    CHECK(a.bootstrap->lower == b.bootstrap->lower);
    CHECK(a.bootstrap->upper == b.bootstrap->upper);
    CHECK(a.bootstrap->lower < a.indirect);
    CHECK(a.indirect < a.bootstrap->upper);
}
