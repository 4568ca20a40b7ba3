#pragma once

// Signed backbone of a bipartite projection under a stochastic degree-sequence null model.
//
// Cell probabilities depend only on the row and column marginals. Random matrices are drawn
// cell by cell from independent Bernoulli variables; each replicate has its own engine keyed
// by (seed, replicate), so sampled distributions do not depend on the number of workers.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "signet/errors.hpp"
#include "signet/generators.hpp"
#include "signet/signed_graph.hpp"

namespace signet {

/// Binary legislator x bill incidence matrix.
class BipartiteGraph {
  public:
    BipartiteGraph() = default;

    /// Dense 0/1 rows. Ids default to "0".."rows-1" and "0".."cols-1".
    static BipartiteGraph from_matrix(const std::vector<std::vector<int>>& cells, std::vector<std::string> row_ids = {},
                                      std::vector<std::string> col_ids = {}) {
        if (cells.empty() || cells.front().empty()) throw Error("bipartite matrix must not be empty");
        BipartiteGraph b;
        b.rows_ = cells.size();
        b.cols_ = cells.front().size();
        b.cells_.assign(b.rows_ * b.cols_, 0);
        for (std::size_t i = 0; i < b.rows_; ++i) {
            if (cells[i].size() != b.cols_) throw Error("bipartite matrix rows have different lengths");
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (cells[i][j] != 0 && cells[i][j] != 1)
                    throw Error("bipartite cell (" + std::to_string(i) + ", " + std::to_string(j) + ") is not 0 or 1");
                b.cells_[i * b.cols_ + j] = static_cast<std::uint8_t>(cells[i][j]);
            }
        }
        b.row_ids_ = row_ids.empty() ? numbered(b.rows_) : std::move(row_ids);
        b.col_ids_ = col_ids.empty() ? numbered(b.cols_) : std::move(col_ids);
        if (b.row_ids_.size() != b.rows_ || b.col_ids_.size() != b.cols_)
            throw Error("bipartite id lists do not match the matrix shape");
        b.compute_marginals();
        return b;
    }

    /// One (legislator, bill) pair per sponsorship event; ids are indexed by first appearance.
    /// Repeated events for the same pair count once.
    static BipartiteGraph from_events(std::span<const std::pair<std::string, std::string>> events) {
        if (events.empty()) throw Error("bipartite event list is empty");
        std::map<std::string, std::size_t> row_index, col_index;
        BipartiteGraph b;
        for (const auto& [r, c] : events) {
            if (r.empty() || c.empty()) throw Error("bipartite identifiers must be nonempty");
            if (row_index.try_emplace(r, b.row_ids_.size()).second) b.row_ids_.push_back(r);
            if (col_index.try_emplace(c, b.col_ids_.size()).second) b.col_ids_.push_back(c);
        }
        b.rows_ = b.row_ids_.size();
        b.cols_ = b.col_ids_.size();
        b.cells_.assign(b.rows_ * b.cols_, 0);
        for (const auto& [r, c] : events) b.cells_[row_index[r] * b.cols_ + col_index[c]] = 1;
        b.compute_marginals();
        return b;
    }

    std::size_t row_count() const noexcept { return rows_; }
    std::size_t col_count() const noexcept { return cols_; }
    int at(std::size_t i, std::size_t j) const { return cells_.at(i * cols_ + j); }
    const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
    const std::vector<std::string>& col_ids() const noexcept { return col_ids_; }
    const std::vector<std::int64_t>& row_sums() const noexcept { return row_sums_; }
    const std::vector<std::int64_t>& col_sums() const noexcept { return col_sums_; }

    std::int64_t total() const noexcept {
        std::int64_t s = 0;
        for (auto r : row_sums_) s += r;
        return s;
    }

    /// Observed co-occurrence count (BB')_uv.
    std::int64_t co_occurrence(std::size_t u, std::size_t v) const {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += cells_[u * cols_ + j] & cells_[v * cols_ + j];
        return s;
    }

  private:
    static std::vector<std::string> numbered(std::size_t n) {
        std::vector<std::string> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
        return ids;
    }

    void compute_marginals() {
        row_sums_.assign(rows_, 0);
        col_sums_.assign(cols_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                row_sums_[i] += cells_[i * cols_ + j];
                col_sums_[j] += cells_[i * cols_ + j];
            }
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> cells_;
    std::vector<std::string> row_ids_, col_ids_;
    std::vector<std::int64_t> row_sums_, col_sums_;
};

// ---------------------------------------------------------------------------
// Null model

enum class NullModelKind {
    max_entropy, // P_ij = x_i y_j / (1 + x_i y_j), expected marginals equal observed ones
    logistic,    // P_ij = logistic(b0 + b1 r_i + b2 c_j)
};

inline std::string_view to_string(NullModelKind k) noexcept {
    return k == NullModelKind::max_entropy ? "max_entropy" : "logistic";
}

inline constexpr double probability_floor = 1e-6;

struct NullModelOptions {
    NullModelKind kind = NullModelKind::max_entropy;
    std::size_t max_iterations = 0; // 0 selects the per-kind default
    double tolerance = 1e-10;
};

struct NullModel {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> probabilities; // row-major
    NullModelKind kind = NullModelKind::max_entropy;
    std::vector<double> coefficients;  // logistic (b0, b1, b2); empty for max_entropy
    std::size_t iterations = 0;
    double deviance = 0.0;
    double max_row_error = 0.0;        // max |expected - observed| / max(observed, 1)
    double max_col_error = 0.0;
    std::vector<double> expected_row_sums;
    std::vector<double> expected_col_sums;
    std::vector<std::string> warnings;

    double at(std::size_t i, std::size_t j) const { return probabilities.at(i * cols + j); }

    /// Wraps explicit probabilities, e.g. for simulation; `clamp` applies the usual floor.
    static NullModel from_probabilities(std::size_t rows, std::size_t cols, std::vector<double> p, bool clamp = true) {
        if (p.size() != rows * cols) throw Error("probability matrix has the wrong size");
        NullModel m;
        m.rows = rows;
        m.cols = cols;
        for (auto& x : p) {
            if (!(x >= 0.0 && x <= 1.0)) throw Error("cell probabilities must lie in [0, 1]");
            if (clamp) x = std::clamp(x, probability_floor, 1.0 - probability_floor);
        }
        m.probabilities = std::move(p);
        return m;
    }
};

namespace detail {

inline double bernoulli_deviance(const BipartiteGraph& b, const std::vector<double>& p) {
    double ll = 0.0;
    for (std::size_t i = 0; i < b.row_count(); ++i)
        for (std::size_t j = 0; j < b.col_count(); ++j) {
            const double q = std::clamp(p[i * b.col_count() + j], 1e-300, 1.0 - 1e-16);
            ll += b.at(i, j) ? std::log(q) : std::log1p(-q);
        }
    return -2.0 * ll;
}

inline void fill_diagnostics(const BipartiteGraph& b, NullModel& m) {
    m.expected_row_sums.assign(m.rows, 0.0);
    m.expected_col_sums.assign(m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            m.expected_row_sums[i] += m.at(i, j);
            m.expected_col_sums[j] += m.at(i, j);
        }
    m.max_row_error = m.max_col_error = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double obs = static_cast<double>(b.row_sums()[i]);
        m.max_row_error = std::max(m.max_row_error, std::abs(m.expected_row_sums[i] - obs) / std::max(obs, 1.0));
    }
    for (std::size_t j = 0; j < m.cols; ++j) {
        const double obs = static_cast<double>(b.col_sums()[j]);
        m.max_col_error = std::max(m.max_col_error, std::abs(m.expected_col_sums[j] - obs) / std::max(obs, 1.0));
    }
    m.deviance = bernoulli_deviance(b, m.probabilities);
}

/// Rows and columns that are all zeros or all ones (after removing such lines repeatedly) have
/// no finite maximum-likelihood parameter; their cells keep the observed value.
inline void fit_max_entropy(const BipartiteGraph& b, NullModel& m, const NullModelOptions& opt) {
    const std::size_t R = b.row_count(), C = b.col_count();
    std::vector<char> row_free(R, 1), col_free(C, 1);
    std::size_t degenerate = 0;
    for (bool changed = true; changed;) {
        changed = false;
        std::size_t free_rows = 0, free_cols = 0;
        for (auto f : row_free) free_rows += f != 0;
        for (auto f : col_free) free_cols += f != 0;
        for (std::size_t i = 0; i < R; ++i) {
            if (!row_free[i]) continue;
            std::size_t s = 0;
            for (std::size_t j = 0; j < C; ++j) s += col_free[j] && b.at(i, j);
            if (s == 0 || s == free_cols) row_free[i] = 0, changed = true, ++degenerate;
        }
        for (std::size_t j = 0; j < C; ++j) {
            if (!col_free[j]) continue;
            std::size_t s = 0;
            for (std::size_t i = 0; i < R; ++i) s += row_free[i] && b.at(i, j);
            if (s == 0 || s == free_rows) col_free[j] = 0, changed = true, ++degenerate;
        }
    }
    if (degenerate > 0)
        m.warnings.push_back(std::to_string(degenerate) +
                             " rows/columns are all zeros or all ones; their probabilities are clamped");

    std::vector<double> r(R, 0.0), c(C, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            if (row_free[i] && col_free[j] && b.at(i, j)) r[i] += 1.0, c[j] += 1.0, total += 1.0;

    std::vector<double> x(R, 0.0), y(C, 0.0);
    const double scale = total > 0 ? std::sqrt(total) : 1.0;
    for (std::size_t i = 0; i < R; ++i) x[i] = r[i] / scale;
    for (std::size_t j = 0; j < C; ++j) y[j] = c[j] / scale;

    auto max_error = [&] {
        double worst = 0.0;
        std::vector<double> col_exp(C, 0.0);
        for (std::size_t i = 0; i < R; ++i) {
            if (!row_free[i]) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < C; ++j) {
                if (!col_free[j]) continue;
                const double q = x[i] * y[j] / (1.0 + x[i] * y[j]);
                s += q;
                col_exp[j] += q;
            }
            worst = std::max(worst, std::abs(s - r[i]) / std::max(r[i], 1.0));
        }
        for (std::size_t j = 0; j < C; ++j)
            if (col_free[j]) worst = std::max(worst, std::abs(col_exp[j] - c[j]) / std::max(c[j], 1.0));
        return worst;
    };

    const std::size_t cap = opt.max_iterations ? opt.max_iterations : 200'000;
    bool converged = total == 0.0;
    std::size_t it = 0;
    while (!converged && it < cap) {
        ++it;
        for (std::size_t i = 0; i < R; ++i) {
            if (!row_free[i]) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < C; ++j)
                if (col_free[j]) s += y[j] / (1.0 + x[i] * y[j]);
            x[i] = r[i] / s;
        }
        for (std::size_t j = 0; j < C; ++j) {
            if (!col_free[j]) continue;
            double s = 0.0;
            for (std::size_t i = 0; i < R; ++i)
                if (row_free[i]) s += x[i] / (1.0 + x[i] * y[j]);
            y[j] = c[j] / s;
        }
        converged = max_error() < opt.tolerance;
    }
    m.iterations = it;

    m.probabilities.assign(R * C, 0.0);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            const double q = row_free[i] && col_free[j] ? x[i] * y[j] / (1.0 + x[i] * y[j]) : b.at(i, j);
            m.probabilities[i * C + j] = std::clamp(q, probability_floor, 1.0 - probability_floor);
        }
    if (!converged) {
        std::ostringstream msg;
        msg << "max-entropy null model did not converge after " << it << " iterations (deviance "
            << bernoulli_deviance(b, m.probabilities) << ")";
        throw Error(msg.str());
    }
}

/// Newton-Raphson maximum likelihood on standardized covariates with step halving.
inline void fit_logistic(const BipartiteGraph& b, NullModel& m, const NullModelOptions& opt) {
    const std::size_t R = b.row_count(), C = b.col_count(), N = R * C;
    auto moments = [](const std::vector<std::int64_t>& v) {
        double mean = 0.0, var = 0.0;
        for (auto x : v) mean += static_cast<double>(x);
        mean /= static_cast<double>(v.size());
        for (auto x : v) var += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
        return std::pair{mean, std::sqrt(var / static_cast<double>(v.size()))};
    };
    const auto [rm, rs] = moments(b.row_sums());
    const auto [cm, cs] = moments(b.col_sums());
    // A constant covariate is absorbed by the intercept.
    const bool use_r = rs > 0.0, use_c = cs > 0.0;
    const int k = 1 + int{use_r} + int{use_c};

    Eigen::MatrixXd X(static_cast<Eigen::Index>(N), k);
    Eigen::VectorXd yv(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            const auto row = static_cast<Eigen::Index>(i * C + j);
            int col = 0;
            X(row, col++) = 1.0;
            if (use_r) X(row, col++) = (static_cast<double>(b.row_sums()[i]) - rm) / rs;
            if (use_c) X(row, col++) = (static_cast<double>(b.col_sums()[j]) - cm) / cs;
            yv(row) = b.at(i, j);
        }

    auto deviance_at = [&](const Eigen::VectorXd& w) {
        const Eigen::VectorXd eta = X * w;
        double ll = 0.0;
        for (Eigen::Index t = 0; t < eta.size(); ++t) {
            const double e = eta(t);
            const double log1pexp = e > 0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
            ll += yv(t) * e - log1pexp;
        }
        return -2.0 * ll;
    };

    Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
    double dev = deviance_at(w);
    const std::size_t cap = opt.max_iterations ? opt.max_iterations : 100;
    bool converged = false;
    std::size_t it = 0;
    while (!converged && it < cap) {
        ++it;
        const Eigen::VectorXd eta = X * w;
        Eigen::VectorXd p(eta.size()), wt(eta.size());
        for (Eigen::Index t = 0; t < eta.size(); ++t) {
            p(t) = 1.0 / (1.0 + std::exp(-eta(t)));
            wt(t) = p(t) * (1.0 - p(t));
        }
        const Eigen::VectorXd grad = X.transpose() * (yv - p);
        const Eigen::MatrixXd H = X.transpose() * wt.asDiagonal() * X;
        Eigen::VectorXd step = H.ldlt().solve(grad);
        if (!step.allFinite()) break;
        double next = deviance_at(w + step);
        for (int halve = 0; halve < 40 && !(next <= dev); ++halve) {
            step *= 0.5;
            next = deviance_at(w + step);
        }
        w += step;
        converged = std::abs(dev - next) <= opt.tolerance * (1.0 + std::abs(next)) && step.lpNorm<Eigen::Infinity>() < 1e-7;
        dev = next;
    }
    m.iterations = it;
    if (!converged) {
        std::ostringstream msg;
        msg << "logistic null model did not converge after " << it << " iterations (deviance " << dev << ")";
        throw Error(msg.str());
    }

    // Back to the raw-marginal scale.
    double b0 = w(0), b1 = 0.0, b2 = 0.0;
    int col = 1;
    if (use_r) {
        b1 = w(col++) / rs;
        b0 -= b1 * rm;
    }
    if (use_c) {
        b2 = w(col++) / cs;
        b0 -= b2 * cm;
    }
    m.coefficients = {b0, b1, b2};
    m.probabilities.assign(N, 0.0);
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            const double eta = b0 + b1 * static_cast<double>(b.row_sums()[i]) + b2 * static_cast<double>(b.col_sums()[j]);
            const double q = 1.0 / (1.0 + std::exp(-eta));
            const double qc = std::clamp(q, probability_floor, 1.0 - probability_floor);
            clamped += qc != q;
            m.probabilities[i * C + j] = qc;
        }
    if (clamped > 0) m.warnings.push_back(std::to_string(clamped) + " cell probabilities clamped to [1e-6, 1-1e-6]");
}

} // namespace detail

/// Fits Pr(B_ij = 1) from the marginals of `b`. Constant matrices are rejected.
inline NullModel fit_cell_probabilities(const BipartiteGraph& b, const NullModelOptions& opt = {}) {
    const auto total = b.total();
    const auto cells = static_cast<std::int64_t>(b.row_count() * b.col_count());
    if (cells == 0) throw Error("bipartite matrix must not be empty");
    if (total == 0 || total == cells) throw Error("constant bipartite matrix: cell probabilities are not identifiable");
    NullModel m;
    m.rows = b.row_count();
    m.cols = b.col_count();
    m.kind = opt.kind;
    if (opt.kind == NullModelKind::max_entropy)
        detail::fit_max_entropy(b, m, opt);
    else
        detail::fit_logistic(b, m, opt);
    detail::fill_diagnostics(b, m);
    return m;
}

// ---------------------------------------------------------------------------
// Monte Carlo null distribution of co-occurrence counts

struct NodePair {
    std::size_t u = 0;
    std::size_t v = 0;
};

inline std::vector<NodePair> all_pairs(std::size_t n) {
    std::vector<NodePair> out;
    out.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) out.push_back({u, v});
    return out;
}

/// Null distribution of (BB')_uv as a histogram over 0..cols.
struct PairDistribution {
    std::size_t u = 0;
    std::size_t v = 0;
    std::int64_t observed = 0;
    std::vector<std::uint64_t> histogram;
    std::uint64_t sample_count = 0;

    std::uint64_t count_at_least(std::int64_t k) const {
        std::uint64_t s = 0;
        for (std::size_t x = static_cast<std::size_t>(std::max<std::int64_t>(k, 0)); x < histogram.size(); ++x) s += histogram[x];
        return s;
    }
    std::uint64_t count_at_most(std::int64_t k) const {
        std::uint64_t s = 0;
        for (std::size_t x = 0; x < histogram.size() && static_cast<std::int64_t>(x) <= k; ++x) s += histogram[x];
        return s;
    }
    double fraction_at_least_observed() const {
        return static_cast<double>(count_at_least(observed)) / static_cast<double>(sample_count);
    }
    double fraction_at_most_observed() const {
        return static_cast<double>(count_at_most(observed)) / static_cast<double>(sample_count);
    }
};

struct SamplingOptions {
    std::size_t replicates = 10'000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool test_mode = false; // permits fewer than 100 replicates
};

struct NullProjection {
    std::vector<PairDistribution> pairs;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

/// Engine for replicate t; depends only on (seed, t).
inline std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
    return std::mt19937_64(seq);
}

/// Each replicate draws the full matrix cell by cell in row-major order, then tallies (B~B~')_uv
/// for the requested pairs. Per-pair histograms are summed, so any worker count gives the same result.
inline NullProjection sample_null_projection(const NullModel& nm, const BipartiteGraph& b, std::span<const NodePair> pairs,
                                             const SamplingOptions& opt = {}) {
    if (nm.rows != b.row_count() || nm.cols != b.col_count()) throw Error("null model shape does not match the bipartite graph");
    if (opt.replicates == 0) throw Error("at least one replicate is required");
    if (opt.replicates < 100 && !opt.test_mode)
        throw Error("fewer than 100 replicates is not enough for inference (got " + std::to_string(opt.replicates) + ")");
    for (const auto& p : pairs)
        if (p.u >= nm.rows || p.v >= nm.rows || p.u == p.v) throw Error("invalid node pair in sampling request");

    NullProjection out;
    out.replicates = opt.replicates;
    out.seed = opt.seed;
    if (opt.replicates < 1000)
        out.warnings.push_back("only " + std::to_string(opt.replicates) + " replicates; 1000 or more are recommended");

    const std::size_t R = nm.rows, C = nm.cols, words = (C + 63) / 64;
    const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(opt.replicates)));
    std::vector<std::vector<std::uint64_t>> local(threads, std::vector<std::uint64_t>(pairs.size() * (C + 1), 0));

    auto worker = [&](unsigned w) {
        std::vector<std::uint64_t> bits(R * words);
        auto& hist = local[w];
        for (std::size_t t = w; t < opt.replicates; t += threads) {
            auto rng = replicate_engine(opt.seed, t);
            std::fill(bits.begin(), bits.end(), 0);
            for (std::size_t i = 0; i < R; ++i)
                for (std::size_t j = 0; j < C; ++j)
                    if (unit_uniform(rng) < nm.probabilities[i * C + j]) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                const auto* a = &bits[pairs[k].u * words];
                const auto* c = &bits[pairs[k].v * words];
                std::size_t joint = 0;
                for (std::size_t x = 0; x < words; ++x) joint += static_cast<std::size_t>(std::popcount(a[x] & c[x]));
                ++hist[k * (C + 1) + joint];
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    out.pairs.resize(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto& d = out.pairs[k];
        d.u = pairs[k].u;
        d.v = pairs[k].v;
        d.observed = b.co_occurrence(d.u, d.v);
        d.histogram.assign(C + 1, 0);
        for (unsigned w = 0; w < threads; ++w)
            for (std::size_t x = 0; x <= C; ++x) d.histogram[x] += local[w][k * (C + 1) + x];
        d.sample_count = opt.replicates;
    }
    return out;
}

/// +1 when significantly many samples fall below the observed count, -1 when significantly few;
/// 0 otherwise. A tail fraction exactly at alpha/2 gives no edge.
inline int backbone_sign(const PairDistribution& d, double alpha) {
    const double n = static_cast<double>(d.sample_count);
    if (2.0 * static_cast<double>(d.count_at_least(d.observed)) < alpha * n) return +1;
    if (2.0 * static_cast<double>(d.count_at_most(d.observed)) < alpha * n) return -1;
    return 0;
}

/// Signed graph over the legislators (rows) of `b`; every unordered pair needs a distribution.
inline SignedGraph extract_signed_backbone(const BipartiteGraph& b, const NullProjection& dists, double alpha = 0.05) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
    const std::size_t n = b.row_count();
    std::vector<const PairDistribution*> lookup(n * n, nullptr);
    for (const auto& d : dists.pairs) {
        if (d.u >= n || d.v >= n || d.u == d.v) throw Error("distribution refers to a node outside the bipartite graph");
        lookup[std::min(d.u, d.v) * n + std::max(d.u, d.v)] = &d;
    }
    std::vector<SignedEdge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const auto* d = lookup[u * n + v];
            if (!d) throw Error("no null distribution for pair (" + b.row_ids()[u] + ", " + b.row_ids()[v] + ")");
            if (const int s = backbone_sign(*d, alpha); s != 0)
                edges.push_back({static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), sign_from_int(s)});
        }
    return SignedGraph::from_edges(b.row_ids(), edges);
}

} // namespace signet
