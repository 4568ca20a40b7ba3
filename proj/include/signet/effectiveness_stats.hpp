#pragma once

// Legislative effectiveness statistics: passage rate, party control, coalition partisanship,
// correlations, standardized regressions and single-mediator path models.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "signet/errors.hpp"
#include "signet/signed_graph.hpp"

namespace signet {

inline std::int64_t party_control(std::int64_t dems, std::int64_t reps) {
    if (dems < 0 || reps < 0) throw std::invalid_argument("party counts must be nonnegative");
    return reps > dems ? reps - dems : dems - reps;
}

/// Dominant-party share of the coalition's Democrats and Republicans.
inline double coalition_control(std::int64_t dems_in_cc, std::int64_t reps_in_cc) {
    if (dems_in_cc < 0 || reps_in_cc < 0) throw std::invalid_argument("coalition counts must be nonnegative");
    if (dems_in_cc + reps_in_cc == 0) throw UndefinedError("coalition control undefined: no Democrats or Republicans in the coalition");
    return static_cast<double>(std::max(dems_in_cc, reps_in_cc)) / static_cast<double>(dems_in_cc + reps_in_cc);
}

struct SessionRecord {
    std::int64_t session = 0;
    std::int64_t dems = 0;
    std::int64_t reps = 0;
    std::int64_t coalition_size = 0;
    std::int64_t dems_in_cc = 0;
    std::int64_t reps_in_cc = 0;
    std::int64_t bills_introduced = 0;
    std::int64_t signed_into_law = 0;

    // derived
    double passage_rate = 0.0;
    std::int64_t party_control = 0;
    double coalition_control = 0.0;
};

/// Validates the counts and fills the derived columns.
inline SessionRecord make_session_record(std::int64_t session, std::int64_t dems, std::int64_t reps,
                                         std::int64_t coalition_size, std::int64_t dems_in_cc, std::int64_t reps_in_cc,
                                         std::int64_t bills, std::int64_t laws) {
    const std::string where = "session " + std::to_string(session) + ": ";
    if (dems < 0 || reps < 0 || coalition_size < 0 || dems_in_cc < 0 || reps_in_cc < 0 || bills < 0 || laws < 0)
        throw Error(where + "counts must be nonnegative");
    if (bills == 0) throw Error(where + "no bills introduced, passage rate undefined");
    if (laws > bills) throw Error(where + "more laws than bills");
    if (dems_in_cc + reps_in_cc > coalition_size) throw Error(where + "coalition party counts exceed its size");
    SessionRecord s{session, dems, reps, coalition_size, dems_in_cc, reps_in_cc, bills, laws};
    s.passage_rate = static_cast<double>(laws) / static_cast<double>(bills);
    s.party_control = signet::party_control(dems, reps);
    s.coalition_control = signet::coalition_control(dems_in_cc, reps_in_cc);
    return s;
}

/// Named numeric column of a session table, in row order.
template <class F>
std::vector<double> session_series(std::span<const SessionRecord> rows, F&& field) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(static_cast<double>(field(r)));
    return out;
}

// ---------------------------------------------------------------------------
// Coalitions

struct CoalitionSummary {
    int side = 0;                  // group of the controlling (larger) coalition
    std::int64_t size = 0;
    std::int64_t dems = 0;
    std::int64_t reps = 0;
    std::int64_t independents = 0;
    double control = 0.0;
};

/// The larger group of `p` (ties go to the group holding node 0) and its party make-up.
inline CoalitionSummary coalition_partisanship(const Partition& p, const NodeAttributes& attrs) {
    if (p.size() != attrs.size()) throw std::invalid_argument("partition and attributes cover different node counts");
    if (p.size() == 0) throw std::invalid_argument("empty partition");
    const auto ones = static_cast<std::int64_t>(p.count(1));
    const auto zeros = static_cast<std::int64_t>(p.size()) - ones;
    CoalitionSummary s;
    s.side = ones > zeros ? 1 : zeros > ones ? 0 : p[0];
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != s.side) continue;
        ++s.size;
        const auto party = attrs.party(i);
        if (!party) throw std::invalid_argument("missing party for node " + std::to_string(i));
        switch (*party) {
        case Party::democrat: ++s.dems; break;
        case Party::republican: ++s.reps; break;
        case Party::independent: ++s.independents; break;
        }
    }
    if (s.dems + s.reps == 0) throw UndefinedError("coalition control undefined: the controlling coalition has only Independents");
    s.control = coalition_control(s.dems, s.reps);
    return s;
}

// ---------------------------------------------------------------------------
// Correlation and regression

namespace detail {

inline double two_sided_t(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

inline double two_sided_normal(double z) {
    if (!std::isfinite(z)) return 0.0;
    return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), std::abs(z)));
}

inline std::pair<double, double> mean_sd(std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(x.size() - 1))};
}

inline std::vector<double> zscore(std::span<const double> x, const std::string& name) {
    const auto [mean, sd] = mean_sd(x);
    if (!(sd > 0.0)) throw Error("series '" + name + "' has zero variance");
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - mean) / sd;
    return z;
}

} // namespace detail

struct Correlation {
    double r = 0.0;
    double p = 1.0;
    std::size_t n = 0;
};

/// Sample Pearson correlation with a two-sided t test on n - 2 degrees of freedom.
inline Correlation pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("series lengths differ");
    if (x.size() < 3) throw std::invalid_argument("correlation needs at least 3 observations");
    const auto zx = detail::zscore(x, "x");
    const auto zy = detail::zscore(y, "y");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += zx[i] * zy[i];
    Correlation c;
    c.n = x.size();
    c.r = std::clamp(s / static_cast<double>(x.size() - 1), -1.0, 1.0);
    const double df = static_cast<double>(x.size() - 2);
    const double denom = 1.0 - c.r * c.r;
    c.p = denom <= 0.0 ? 0.0 : detail::two_sided_t(c.r * std::sqrt(df / denom), df);
    return c;
}

struct Coefficient {
    std::string name;
    double beta = 0.0; // standardized
    double se = 0.0;
    double t = 0.0;
    double p = 1.0;
};

struct Regression {
    std::vector<Coefficient> coefficients; // one per predictor, in input order
    double r_squared = 0.0;
    std::size_t n = 0;
    std::size_t df = 0; // n - k - 1

    const Coefficient& operator[](const std::string& name) const {
        for (const auto& c : coefficients)
            if (c.name == name) return c;
        throw std::out_of_range("no coefficient named '" + name + "'");
    }
};

struct NamedSeries {
    std::string name;
    std::vector<double> values;
};

/// OLS of z-scored outcome on z-scored predictors (with intercept). Returns standardized betas
/// with two-sided t-test p-values on n - k - 1 degrees of freedom.
inline Regression ols_standardized(std::span<const double> outcome, std::span<const NamedSeries> predictors) {
    const std::size_t n = outcome.size(), k = predictors.size();
    if (k == 0) throw std::invalid_argument("at least one predictor is required");
    for (const auto& p : predictors)
        if (p.values.size() != n) throw std::invalid_argument("predictor '" + p.name + "' has a different length than the outcome");
    if (n <= k + 1) throw std::invalid_argument("need more observations than predictors + 1");

    const auto zy = detail::zscore(outcome, "outcome");
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1));
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        X(static_cast<Eigen::Index>(i), 0) = 1.0;
        y(static_cast<Eigen::Index>(i)) = zy[i];
    }
    for (std::size_t c = 0; c < k; ++c) {
        const auto z = detail::zscore(predictors[c].values, predictors[c].name);
        for (std::size_t i = 0; i < n; ++i) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c + 1)) = z[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols()) {
        std::string names;
        const auto perm = qr.colsPermutation().indices();
        for (Eigen::Index t = qr.rank(); t < X.cols(); ++t) {
            const auto col = perm(t);
            if (!names.empty()) names += ", ";
            names += col == 0 ? std::string("intercept") : predictors[static_cast<std::size_t>(col - 1)].name;
        }
        throw Error("rank-deficient design: collinear column(s) " + names);
    }
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - X * beta;
    Regression reg;
    reg.n = n;
    reg.df = n - k - 1;
    const double rss = resid.squaredNorm();
    const double sigma2 = rss / static_cast<double>(reg.df);
    reg.r_squared = 1.0 - rss / y.squaredNorm();
    const Eigen::MatrixXd cov = sigma2 * (X.transpose() * X).inverse();
    for (std::size_t c = 0; c < k; ++c) {
        const auto j = static_cast<Eigen::Index>(c + 1);
        Coefficient co;
        co.name = predictors[c].name;
        co.beta = beta(j);
        co.se = std::sqrt(cov(j, j));
        co.t = co.beta / co.se;
        co.p = detail::two_sided_t(co.t, static_cast<double>(reg.df));
        reg.coefficients.push_back(std::move(co));
    }
    return reg;
}

inline Regression ols_standardized(std::span<const double> outcome, const std::vector<NamedSeries>& predictors) {
    return ols_standardized(outcome, std::span<const NamedSeries>(predictors));
}

// ---------------------------------------------------------------------------
// Mediation

struct MediationOptions {
    std::size_t bootstrap_resamples = 0; // 0 = Sobel only
    std::uint64_t seed = 0;
};

struct BootstrapInterval {
    std::size_t resamples = 0;
    double lower = 0.0; // 2.5th percentile of a*b
    double upper = 0.0; // 97.5th percentile
    double p = 1.0;     // twice the smaller tail fraction on either side of zero
};

/// time -> mediator (a), mediator -> outcome controlling for time (b), time -> outcome
/// controlling for mediator (c_direct), and the bivariate total effect.
struct PathModel {
    Coefficient a;
    Coefficient b;
    Coefficient c_direct;
    Coefficient total;
    double indirect = 0.0; // a * b
    double indirect_se = 0.0;
    double indirect_z = 0.0;
    double indirect_p = 1.0; // Sobel
    std::optional<BootstrapInterval> bootstrap;
    std::size_t n = 0;
};

inline PathModel mediation_model(std::span<const double> time, std::span<const double> mediator,
                                 std::span<const double> outcome, const MediationOptions& opt = {}) {
    if (time.size() != mediator.size() || time.size() != outcome.size())
        throw std::invalid_argument("time, mediator and outcome must have equal lengths");
    const std::vector<double> t(time.begin(), time.end()), m(mediator.begin(), mediator.end());
    PathModel pm;
    pm.n = time.size();
    pm.a = ols_standardized(mediator, std::vector<NamedSeries>{{"time", t}}).coefficients[0];
    const auto joint = ols_standardized(outcome, std::vector<NamedSeries>{{"mediator", m}, {"time", t}});
    pm.b = joint["mediator"];
    pm.c_direct = joint["time"];
    pm.total = ols_standardized(outcome, std::vector<NamedSeries>{{"time", t}}).coefficients[0];
    pm.a.name = "a";
    pm.b.name = "b";
    pm.c_direct.name = "c_direct";
    pm.total.name = "total";
    pm.indirect = pm.a.beta * pm.b.beta;
    pm.indirect_se = std::sqrt(pm.a.beta * pm.a.beta * pm.b.se * pm.b.se + pm.b.beta * pm.b.beta * pm.a.se * pm.a.se);
    pm.indirect_z = pm.indirect / pm.indirect_se;
    pm.indirect_p = detail::two_sided_normal(pm.indirect_z);

    if (opt.bootstrap_resamples > 0) {
        std::mt19937_64 rng(opt.seed);
        const std::size_t n = pm.n;
        std::vector<double> draws;
        draws.reserve(opt.bootstrap_resamples);
        std::vector<double> bt(n), bm(n), bo(n);
        std::size_t attempts = 0;
        while (draws.size() < opt.bootstrap_resamples) {
            if (++attempts > 20 * opt.bootstrap_resamples) throw Error("bootstrap resamples are repeatedly degenerate");
            for (std::size_t i = 0; i < n; ++i) {
                const auto k = static_cast<std::size_t>(rng() % n);
                bt[i] = time[k];
                bm[i] = mediator[k];
                bo[i] = outcome[k];
            }
            try {
                const double a = ols_standardized(bm, std::vector<NamedSeries>{{"time", bt}}).coefficients[0].beta;
                const double b = ols_standardized(bo, std::vector<NamedSeries>{{"mediator", bm}, {"time", bt}})["mediator"].beta;
                draws.push_back(a * b);
            } catch (const Error&) {
                // zero-variance or collinear resample; draw again
            }
        }
        std::sort(draws.begin(), draws.end());
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(draws.size() - 1);
            const auto lo = static_cast<std::size_t>(std::floor(pos));
            const auto hi = std::min(lo + 1, draws.size() - 1);
            return draws[lo] + (pos - static_cast<double>(lo)) * (draws[hi] - draws[lo]);
        };
        BootstrapInterval bi;
        bi.resamples = draws.size();
        bi.lower = quantile(0.025);
        bi.upper = quantile(0.975);
        const auto below = static_cast<double>(std::count_if(draws.begin(), draws.end(), [](double d) { return d <= 0.0; }));
        const auto above = static_cast<double>(std::count_if(draws.begin(), draws.end(), [](double d) { return d >= 0.0; }));
        bi.p = std::min(1.0, 2.0 * std::min(below, above) / static_cast<double>(draws.size()));
        pm.bootstrap = bi;
    }
    return pm;
}

/// "**" below 0.01, "*" below 0.05, empty otherwise.
inline std::string significance_stars(double p) {
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

} // namespace signet
