// signet: command-line front end for balance, exact frustration, backbone extraction and
// effectiveness statistics.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "signet/balance_metrics.hpp"
#include "signet/effectiveness_stats.hpp"
#include "signet/frustration_solver.hpp"
#include "signet/io.hpp"
#include "signet/sdsm_backbone.hpp"
#include "signet/svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace signet;

namespace {

constexpr const char* tool_version = "0.1.0";

enum ExitCode { ok = 0, failure = 1, uncertified = 3 };

struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool deterministic = false;
    std::string output_dir = ".";
};

/// Per-subsystem seed derived from the global seed and a label (FNV-1a then splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : label) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    std::uint64_t z = seed ^ h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

/// Records inputs, outputs, configuration and certification of one run.
class RunManifest {
  public:
    RunManifest(std::string command, const Globals& g) : g_(g), start_(std::chrono::steady_clock::now()) {
        j_["command"] = std::move(command);
        j_["tool_version"] = tool_version;
        j_["inputs"] = ordered_json::array();
        j_["config"] = ordered_json::object();
        j_["seed"] = nullptr;
        j_["outputs"] = ordered_json::array();
        j_["certification"] = ordered_json::object();
    }

    void input(const std::string& path) { j_["inputs"].push_back(path); }
    ordered_json& config() { return j_["config"]; }
    void uses_seed() { j_["seed"] = g_.seed; }
    void certify(const std::string& what, bool value) { j_["certification"][what] = value; }

    fs::path path(const std::string& name) const { return fs::path(g_.output_dir) / name; }

    /// Writes `text` to the output directory and lists it.
    fs::path write(const std::string& name, const std::string& text) {
        const auto p = path(name);
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error("cannot write '" + p.string() + "'");
        out << text;
        j_["outputs"].push_back(p.string());
        return p;
    }

    fs::path write_json(const std::string& name, const ordered_json& j) { return write(name, j.dump(2) + "\n"); }

    void finish(const std::string& name = "manifest.json") {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        j_["threads"] = g_.threads;
        j_["deterministic"] = g_.deterministic;
        j_["wall_time"] = g_.deterministic ? 0.0 : wall;
        if (!g_.deterministic) j_["timestamp"] = utc_timestamp();
        const auto p = path(name);
        j_["outputs"].push_back(p.string());
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error("cannot write '" + p.string() + "'");
        out << j_.dump(2) << "\n";
    }

  private:
    const Globals& g_;
    std::chrono::steady_clock::time_point start_;
    ordered_json j_;
};

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------
// Shared solve configuration

struct SolveFlags {
    std::optional<int> tier;
    std::uint64_t node_budget = 1'000'000;
    double time_budget = 600.0;
    bool allow_uncertified = false;
    bool no_lp = false;
    std::uint64_t progress_interval = 100'000;
    bool progress = false;

    void add_to(CLI::App* app) {
        app->add_option("--tier", tier, "Triangle inequalities in the relaxation: 0 none, 1 negative, 2 all")
            ->check(CLI::Range(0, 2));
        app->add_option("--node-budget", node_budget, "Branch-and-bound node budget")->capture_default_str();
        app->add_option("--time-budget", time_budget, "Branch-and-bound time budget in seconds")->capture_default_str();
        app->add_flag("--allow-uncertified", allow_uncertified, "Exit 0 even when optimality is not certified");
        app->add_flag("--no-lp", no_lp, "Skip the relaxation bound (use triangle packing only)");
        app->add_flag("--progress", progress, "Print bound progress lines to stderr");
        app->add_option("--progress-interval", progress_interval, "Nodes between progress lines")->capture_default_str();
    }

    FrustrationOptions options(const Globals& g) const {
        FrustrationOptions o;
        if (tier) o.bound.tier = static_cast<BoundTier>(*tier);
        o.compute_lp = !no_lp;
        o.solve.node_budget = node_budget;
        o.solve.time_budget_seconds = time_budget;
        o.solve.threads = g.threads;
        o.solve.progress = progress ? &std::cerr : nullptr;
        o.solve.progress_interval = progress_interval;
        return o;
    }

    void record(RunManifest& m, const FrustrationOptions& o, const SignedGraph& g) const {
        m.config()["bound_tier"] = static_cast<int>(o.bound.tier.value_or(default_tier(g)));
        m.config()["node_budget"] = node_budget;
        m.config()["time_budget_seconds"] = time_budget;
        m.config()["lp"] = !no_lp;
    }
};

ordered_json solve_json(const SignedGraph& g, const FrustrationAnalysis& a, const Globals& gl, const std::string& partition_path) {
    const auto& r = a.result;
    ordered_json j;
    j["L"] = r.frustration_index;
    j["F"] = g.edge_count() > 0 ? ordered_json(normalized_frustration(r.frustration_index, static_cast<std::int64_t>(g.edge_count())))
                                : ordered_json(nullptr);
    j["Ystar"] = a.lp ? ordered_json(a.lp->value) : ordered_json(nullptr);
    j["lower_bound"] = r.proof.lower;
    j["lower_method"] = std::string(to_string(r.proof.lower_method));
    j["certified"] = r.certified;
    j["partition_canonical"] = r.partition_canonical;
    j["partition_path"] = partition_path;
    j["wall_time"] = gl.deterministic ? 0.0 : r.wall_time;
    j["nodes_explored"] = r.node_count_explored;
    j["triangle_count"] = a.triangle_count;
    j["packing_bound"] = a.packing_bound;
    j["heuristic_upper"] = a.heuristic_upper;
    j["warm_start_count"] = a.warm_start_count ? ordered_json(*a.warm_start_count) : ordered_json(nullptr);
    return j;
}

std::optional<NodeAttributes> load_attributes(const std::string& path, const SignedGraph& g, RunManifest& m) {
    if (path.empty()) return std::nullopt;
    auto in = io::open_input(path);
    m.input(path);
    auto attrs = io::read_attributes(in, g);
    if (!attrs.covers_all()) throw Error("attribute file '" + path + "' does not label every node");
    return attrs;
}

std::string partition_csv(const SignedGraph& g, const Partition& p) {
    std::ostringstream s;
    io::write_partition(s, g, p);
    return s.str();
}

const char* report_header = "name,n,m,m_neg,m_pos,density,T,L,F,Ystar\n";

std::string report_row(const std::string& name, const SignedGraph& g, const BalanceReport& r) {
    std::ostringstream s;
    s << name << ',' << g.node_count() << ',' << g.edge_count() << ',' << g.negative_edge_count() << ','
      << g.positive_edge_count() << ',' << fixed(g.density(), 3) << ',' << (r.triangle_index ? fixed(*r.triangle_index, 3) : "")
      << ',' << (r.frustration_index ? std::to_string(*r.frustration_index) : "") << ','
      << (r.normalized_frustration ? fixed(*r.normalized_frustration, 3) : "") << ','
      << (r.lower_bound ? fixed(*r.lower_bound, 3) : "") << '\n';
    return s.str();
}

// ---------------------------------------------------------------------------
// balance / solve / report

struct BalanceArgs {
    std::string graph, attrs, name;
    bool exact = false;
    SolveFlags solve;
};

int cmd_balance(const BalanceArgs& a, const Globals& gl) {
    RunManifest m("balance", gl);
    m.input(a.graph);
    const auto g = io::read_graph_file(a.graph);
    auto report = balance_report(g);
    if (!report.triangle_index) std::cerr << "warning: triangle index undefined: graph has no triangles\n";
    const std::string name = a.name.empty() ? fs::path(a.graph).stem().string() : a.name;

    ordered_json j;
    j["name"] = name;
    j["n"] = g.node_count();
    j["m"] = g.edge_count();
    j["m_neg"] = g.negative_edge_count();
    j["m_pos"] = g.positive_edge_count();
    j["density"] = g.density();
    j["triangle_count"] = report.triangle_count;
    j["T"] = optional_number(report.triangle_index);

    int code = ok;
    if (a.exact) {
        const auto attrs = load_attributes(a.attrs, g, m);
        const auto opt = a.solve.options(gl);
        a.solve.record(m, opt, g);
        const auto an = compute_frustration_index(g, attrs ? &*attrs : nullptr, opt);
        attach_frustration(report, g, an.result.frustration_index, an.lp ? std::optional(an.lp->value) : std::nullopt);
        const auto part = m.write("partition.csv", partition_csv(g, an.result.optimal_partition));
        j["solve"] = solve_json(g, an, gl, part.string());
        j["L"] = an.result.frustration_index;
        j["F"] = optional_number(report.normalized_frustration);
        j["Ystar"] = optional_number(report.lower_bound);
        m.certify("optimal", an.result.certified);
        if (!an.result.certified) {
            std::cerr << "warning: frustration index not certified optimal within budget\n";
            if (!a.solve.allow_uncertified) code = uncertified;
        }
    }
    m.write_json("balance.json", j);
    m.write("balance.csv", std::string(report_header) + report_row(name, g, report));
    m.finish();
    std::cout << report_row(name, g, report);
    return code;
}

struct SolveArgs {
    std::string graph, attrs;
    bool warm_start = false;
    SolveFlags solve;
};

int cmd_solve(const SolveArgs& a, const Globals& gl) {
    RunManifest m("solve", gl);
    m.input(a.graph);
    const auto g = io::read_graph_file(a.graph);
    if (a.warm_start && a.attrs.empty()) throw Error("warm-start requires attributes");
    const auto attrs = load_attributes(a.attrs, g, m);
    const auto opt = a.solve.options(gl);
    a.solve.record(m, opt, g);
    const auto an = compute_frustration_index(g, attrs ? &*attrs : nullptr, opt);
    const auto part = m.write("partition.csv", partition_csv(g, an.result.optimal_partition));
    const auto j = solve_json(g, an, gl, part.string());
    m.write_json("solve.json", j);
    m.certify("optimal", an.result.certified);
    m.finish();
    std::cout << j.dump(2) << "\n";
    if (!an.result.certified) {
        std::cerr << "warning: frustration index not certified optimal within budget\n";
        if (!a.solve.allow_uncertified) return uncertified;
    }
    return ok;
}

struct ReportArgs {
    std::vector<std::string> graphs;
    bool exact = false;
    SolveFlags solve;
};

int cmd_report(const ReportArgs& a, const Globals& gl) {
    RunManifest m("report", gl);
    std::string csv = report_header;
    bool all_certified = true;
    for (const auto& path : a.graphs) {
        m.input(path);
        const auto g = io::read_graph_file(path);
        auto r = balance_report(g);
        if (a.exact) {
            const auto opt = a.solve.options(gl);
            a.solve.record(m, opt, g);
            const auto an = compute_frustration_index(g, nullptr, opt);
            attach_frustration(r, g, an.result.frustration_index, an.lp ? std::optional(an.lp->value) : std::nullopt);
            all_certified &= an.result.certified;
            m.certify(fs::path(path).stem().string(), an.result.certified);
        }
        csv += report_row(fs::path(path).stem().string(), g, r);
    }
    m.write("report.csv", csv);
    m.finish();
    std::cout << csv;
    return all_certified || a.solve.allow_uncertified ? ok : uncertified;
}

// ---------------------------------------------------------------------------
// backbone

struct BackboneArgs {
    std::string input, output = "backbone.csv", null_model = "max_entropy";
    double alpha = 0.05;
    std::size_t replicates = 10'000;
};

NullModelKind parse_null_model(const std::string& s) {
    if (s == "max_entropy") return NullModelKind::max_entropy;
    if (s == "logistic") return NullModelKind::logistic;
    throw Error("unknown null model '" + s + "'");
}

struct BackboneOutput {
    SignedGraph graph;
    ordered_json summary;
};

BackboneOutput run_backbone(const BipartiteGraph& b, const BackboneArgs& a, const Globals& gl, RunManifest& m) {
    NullModelOptions nopt;
    nopt.kind = parse_null_model(a.null_model);
    const auto model = fit_cell_probabilities(b, nopt);
    for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
    SamplingOptions sopt;
    sopt.replicates = a.replicates;
    sopt.seed = derive_seed(gl.seed, "backbone");
    sopt.threads = gl.threads;
    const auto pairs = all_pairs(b.row_count());
    const auto dists = sample_null_projection(model, b, pairs, sopt);
    for (const auto& w : dists.warnings) std::cerr << "warning: " << w << "\n";
    auto g = extract_signed_backbone(b, dists, a.alpha);

    m.uses_seed();
    m.config()["alpha"] = a.alpha;
    m.config()["replicates"] = a.replicates;
    m.config()["null_model"] = a.null_model;

    ordered_json s;
    s["pairs_tested"] = pairs.size();
    s["pos_edges"] = g.positive_edge_count();
    s["neg_edges"] = g.negative_edge_count();
    s["alpha"] = a.alpha;
    s["replicates"] = a.replicates;
    s["seed"] = gl.seed;
    s["null_model"] = a.null_model;
    s["fit"] = {{"iterations", model.iterations},
                {"deviance", model.deviance},
                {"max_row_error", model.max_row_error},
                {"max_col_error", model.max_col_error},
                {"warnings", model.warnings}};
    if (!model.coefficients.empty()) s["fit"]["coefficients"] = model.coefficients;
    return {std::move(g), std::move(s)};
}

int cmd_backbone(const BackboneArgs& a, const Globals& gl) {
    RunManifest m("backbone", gl);
    m.input(a.input);
    auto in = io::open_input(a.input);
    const auto b = io::read_bipartite(in);
    const auto out = run_backbone(b, a, gl, m);
    std::ostringstream edges;
    io::write_signed_edge_list(edges, out.graph);
    m.write(a.output, edges.str());
    m.write_json("backbone.json", out.summary);
    m.finish();
    std::cout << out.summary.dump(2) << "\n";
    return ok;
}

// ---------------------------------------------------------------------------
// mediate

struct MediateArgs {
    std::string sessions, mediator = "both";
    std::size_t bootstrap = 0;
    bool plots = true;
};

ordered_json coefficient_json(const Coefficient& c) {
    return {{"beta", c.beta}, {"se", c.se}, {"t", c.t}, {"p", c.p}, {"sig", significance_stars(c.p)}};
}

ordered_json path_json(const PathModel& pm) {
    ordered_json j;
    j["n"] = pm.n;
    j["a"] = coefficient_json(pm.a);
    j["b"] = coefficient_json(pm.b);
    j["direct"] = coefficient_json(pm.c_direct);
    j["total"] = coefficient_json(pm.total);
    j["indirect"] = {{"beta", pm.indirect}, {"se", pm.indirect_se}, {"z", pm.indirect_z}, {"p", pm.indirect_p},
                     {"sig", significance_stars(pm.indirect_p)}, {"method", "sobel"}};
    if (pm.bootstrap)
        j["indirect"]["bootstrap"] = {{"resamples", pm.bootstrap->resamples},
                                      {"ci_lower", pm.bootstrap->lower},
                                      {"ci_upper", pm.bootstrap->upper},
                                      {"p", pm.bootstrap->p}};
    return j;
}

struct StatsResult {
    ordered_json json;
    std::string coefficients_csv;
};

StatsResult run_statistics(const io::SessionTable& t, const MediateArgs& a, const Globals& gl, RunManifest& m) {
    const std::span<const SessionRecord> r = t.records;
    const auto session = session_series(r, [](const auto& s) { return s.session; });
    const auto rate = session_series(r, [](const auto& s) { return s.passage_rate; });
    const auto bills = session_series(r, [](const auto& s) { return s.bills_introduced; });
    const auto coalition = session_series(r, [](const auto& s) { return s.coalition_control; });
    const auto party = session_series(r, [](const auto& s) { return s.party_control; });

    StatsResult out;
    auto& j = out.json;
    std::string csv = "model,term,beta,se,p,sig\n";
    auto add_row = [&](const std::string& model, const std::string& term, double beta, double se, double p) {
        csv += model + ',' + term + ',' + fixed(beta, 6) + ',' + fixed(se, 6) + ',' + fixed(p, 6) + ',' + significance_stars(p) + '\n';
    };

    const auto biv = ols_standardized(rate, std::vector<NamedSeries>{{"session", session}});
    j["bivariate"] = coefficient_json(biv["session"]);
    add_row("rate~session", "session", biv["session"].beta, biv["session"].se, biv["session"].p);
    const auto c1 = pearson_r(rate, bills);
    const auto c2 = pearson_r(bills, session);
    j["correlations"] = {{"rate_bills", {{"r", c1.r}, {"p", c1.p}}}, {"bills_session", {{"r", c2.r}, {"p", c2.p}}}};

    MediationOptions mopt;
    mopt.bootstrap_resamples = a.bootstrap;
    mopt.seed = derive_seed(gl.seed, "bootstrap");
    if (a.bootstrap > 0) {
        m.uses_seed();
        m.config()["bootstrap_resamples"] = a.bootstrap;
    }
    auto mediate = [&](const std::string& name, const std::vector<double>& mediator) {
        const auto pm = mediation_model(session, mediator, rate, mopt);
        j["mediation"][name] = path_json(pm);
        add_row(name, "a", pm.a.beta, pm.a.se, pm.a.p);
        add_row(name, "b", pm.b.beta, pm.b.se, pm.b.p);
        add_row(name, "direct", pm.c_direct.beta, pm.c_direct.se, pm.c_direct.p);
        add_row(name, "indirect", pm.indirect, pm.indirect_se, pm.indirect_p);
    };
    if (a.mediator == "coalition" || a.mediator == "both") mediate("coalition_control", coalition);
    if (a.mediator == "party" || a.mediator == "both") mediate("party_control", party);
    m.config()["mediator"] = a.mediator;
    out.coefficients_csv = std::move(csv);

    if (a.plots) {
        const std::optional<std::string> stamp = gl.deterministic ? std::nullopt : std::optional(utc_timestamp());
        auto chart = [&](const std::string& file, const std::string& title, const std::string& ylab, const std::vector<double>& y,
                         const char* color) {
            LineChart c{title, "session", ylab, session, {{ylab, y, color}}, stamp};
            m.write(file, render_svg(c));
        };
        chart("passage_rate.svg", "Bill passage rate by session", "passage rate", rate, "#1f77b4");
        chart("coalition_control.svg", "Coalition control by session", "coalition control", coalition, "#d62728");
        chart("party_control.svg", "Party control by session", "party control", party, "#2ca02c");
    }
    return out;
}

int cmd_mediate(const MediateArgs& a, const Globals& gl) {
    RunManifest m("mediate", gl);
    m.input(a.sessions);
    const auto t = io::read_session_table_file(a.sessions);
    const auto s = run_statistics(t, a, gl, m);
    m.write_json("mediation.json", s.json);
    m.write("coefficients.csv", s.coefficients_csv);
    m.finish();
    std::cout << s.json.dump(2) << "\n";
    return ok;
}

// ---------------------------------------------------------------------------
// pipeline

struct PipelineArgs {
    std::string bipartite, attrs, sessions;
    std::optional<std::int64_t> session;
    bool stats_only = false;
    bool warm_start = false;
    BackboneArgs backbone;
    SolveFlags solve;
    MediateArgs mediate;
};

struct StageError : Error {
    StageError(const std::string& stage, const std::string& what) : Error("stage '" + stage + "' failed: " + what) {}
};

template <class F>
auto stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

int cmd_pipeline(PipelineArgs a, const Globals& gl) {
    RunManifest m("pipeline", gl);
    ordered_json j;
    int code = ok;
    auto finish = [&] {
        m.write_json("pipeline.json", j);
        m.finish();
    };
    try {
        std::optional<io::SessionTable> table;
        if (!a.sessions.empty())
            table = stage("sessions", [&] {
                m.input(a.sessions);
                return io::read_session_table_file(a.sessions);
            });
        if (a.stats_only && !table) throw StageError("sessions", "--stats-only needs --sessions");

        if (!a.stats_only) {
            if (a.bipartite.empty()) throw StageError("backbone", "no bipartite input (use --bipartite or --stats-only)");
            const auto bb = stage("backbone", [&] {
                m.input(a.bipartite);
                auto in = io::open_input(a.bipartite);
                const auto b = io::read_bipartite(in);
                auto out = run_backbone(b, a.backbone, gl, m);
                std::ostringstream edges;
                io::write_signed_edge_list(edges, out.graph);
                m.write("backbone.csv", edges.str());
                return out;
            });
            j["backbone"] = bb.summary;
            if (bb.graph.edge_count() == 0) throw StageError("solve", "backbone has no edges");

            const auto attrs = stage("solve", [&] {
                if (a.warm_start && a.attrs.empty()) throw Error("warm-start requires attributes");
                return load_attributes(a.attrs, bb.graph, m);
            });
            const auto an = stage("solve", [&] {
                const auto opt = a.solve.options(gl);
                a.solve.record(m, opt, bb.graph);
                return compute_frustration_index(bb.graph, a.warm_start && attrs ? &*attrs : nullptr, opt);
            });
            const auto part = m.write("partition.csv", partition_csv(bb.graph, an.result.optimal_partition));
            auto report = balance_report(bb.graph);
            attach_frustration(report, bb.graph, an.result.frustration_index, an.lp ? std::optional(an.lp->value) : std::nullopt);
            j["solve"] = solve_json(bb.graph, an, gl, part.string());
            j["solve"]["T"] = optional_number(report.triangle_index);
            m.write("balance.csv", std::string(report_header) + report_row("backbone", bb.graph, report));
            m.certify("optimal", an.result.certified);
            if (!an.result.certified && !a.solve.allow_uncertified) code = uncertified;

            if (attrs) {
                const auto cc = stage("coalition", [&] { return coalition_partisanship(an.result.optimal_partition, *attrs); });
                j["coalition"] = {{"side", cc.side},
                                  {"size", cc.size},
                                  {"dems", cc.dems},
                                  {"reps", cc.reps},
                                  {"independents", cc.independents},
                                  {"coalition_control", cc.control}};
                if (table && a.session) {
                    stage("coalition", [&] {
                        for (auto& rec : table->records)
                            if (rec.session == *a.session) {
                                rec = make_session_record(rec.session, rec.dems, rec.reps, cc.size, cc.dems, cc.reps,
                                                          rec.bills_introduced, rec.signed_into_law);
                                return 0;
                            }
                        throw Error("session " + std::to_string(*a.session) + " is not in the session table");
                    });
                    j["coalition"]["replaces_session"] = *a.session;
                }
            }
        }

        if (table) {
            const auto s = stage("mediate", [&] { return run_statistics(*table, a.mediate, gl, m); });
            j["statistics"] = s.json;
            m.write("coefficients.csv", s.coefficients_csv);
        }
    } catch (const StageError& e) {
        j["error"] = e.what();
        finish();
        throw;
    }
    finish();
    std::cout << j.dump(2) << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"signet: structural balance, exact frustration index, signed backbones and effectiveness statistics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);
    Globals gl;
    app.add_option("--seed", gl.seed, "Seed for all randomness")->capture_default_str();
    app.add_option("--threads", gl.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--deterministic", gl.deterministic, "Zero wall times and omit timestamps so outputs are byte-identical");
    app.add_option("--output-dir", gl.output_dir, "Directory for output files")->capture_default_str();

    BalanceArgs ba;
    auto* balance = app.add_subcommand("balance", "Triangle index, and with --exact the frustration index");
    balance->add_option("graph", ba.graph, "Signed edge list or adjacency CSV")->required()->check(CLI::ExistingFile);
    balance->add_option("--attrs", ba.attrs, "Party attribute CSV (node,party) for the warm start");
    balance->add_option("--name", ba.name, "Network name in the report row");
    balance->add_flag("--exact", ba.exact, "Run the bound-then-solve pipeline");
    ba.solve.add_to(balance);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Exact frustration index with a certified optimal partition");
    solve->add_option("graph", sa.graph, "Signed edge list or adjacency CSV")->required()->check(CLI::ExistingFile);
    solve->add_option("--attrs", sa.attrs, "Party attribute CSV (node,party) for the warm start");
    solve->add_flag("--warm-start", sa.warm_start, "Require a party warm start");
    sa.solve.add_to(solve);

    BackboneArgs bb;
    auto* backbone = app.add_subcommand("backbone", "Signed backbone of a bipartite projection");
    backbone->add_option("input", bb.input, "legislator,bill CSV or dense 0/1 matrix CSV")->required()->check(CLI::ExistingFile);
    backbone->add_option("--alpha", bb.alpha, "Two-tailed significance level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    backbone->add_option("--replicates", bb.replicates, "Monte Carlo replicates")->capture_default_str();
    backbone->add_option("--null-model", bb.null_model, "max_entropy or logistic")->capture_default_str();
    backbone->add_option("--output", bb.output, "Signed edge list file name")->capture_default_str();

    MediateArgs ma;
    auto* mediate = app.add_subcommand("mediate", "Passage-rate regression and mediation path models");
    mediate->add_option("sessions", ma.sessions, "Session table CSV")->required()->check(CLI::ExistingFile);
    mediate->add_option("--mediator", ma.mediator, "coalition, party or both")
        ->check(CLI::IsMember({"coalition", "party", "both"}))
        ->capture_default_str();
    mediate->add_option("--bootstrap", ma.bootstrap, "Percentile bootstrap resamples for the indirect effect (0 = off)");
    mediate->add_flag("!--no-plots", ma.plots, "Skip SVG plots");

    PipelineArgs pa;
    auto* pipeline = app.add_subcommand("pipeline", "Backbone, solve, coalition statistics and mediation");
    pipeline->add_option("--bipartite", pa.bipartite, "Bipartite sponsorship input");
    pipeline->add_option("--attrs", pa.attrs, "Party attribute CSV");
    pipeline->add_option("--sessions", pa.sessions, "Session table CSV");
    pipeline->add_option("--session", pa.session, "Replace this session's coalition columns with the computed ones");
    pipeline->add_flag("--stats-only", pa.stats_only, "Only run the statistics stage");
    pipeline->add_flag("--warm-start", pa.warm_start, "Warm-start the solver from party labels");
    pipeline->add_option("--alpha", pa.backbone.alpha, "Two-tailed significance level")->check(CLI::Range(0.0, 1.0));
    pipeline->add_option("--replicates", pa.backbone.replicates, "Monte Carlo replicates");
    pipeline->add_option("--null-model", pa.backbone.null_model, "max_entropy or logistic");
    pipeline->add_option("--mediator", pa.mediate.mediator, "coalition, party or both")->check(CLI::IsMember({"coalition", "party", "both"}));
    pipeline->add_option("--bootstrap", pa.mediate.bootstrap, "Bootstrap resamples for the indirect effect");
    pipeline->add_flag("!--no-plots", pa.mediate.plots, "Skip SVG plots");
    pa.solve.add_to(pipeline);

    ReportArgs ra;
    auto* report = app.add_subcommand("report", "One balance row per network");
    report->add_option("graphs", ra.graphs, "Graph files")->required()->check(CLI::ExistingFile);
    report->add_flag("--exact", ra.exact, "Include L, F and Y*");
    ra.solve.add_to(report);

    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(gl.output_dir);
        if (*balance) return cmd_balance(ba, gl);
        if (*solve) return cmd_solve(sa, gl);
        if (*backbone) return cmd_backbone(bb, gl);
        if (*mediate) return cmd_mediate(ma, gl);
        if (*pipeline) return cmd_pipeline(pa, gl);
        if (*report) return cmd_report(ra, gl);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
    return failure;
}
