// Command-line front end: sampling, invariant bundles and Monte Carlo runs.

#include "flagprod/errors.hpp"
#include "flagprod/experiment.hpp"
#include "flagprod/garland.hpp"
#include "flagprod/group_invariants.hpp"
#include "flagprod/homology.hpp"
#include "flagprod/polynomial.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace flagprod;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kThreshold = 1, kUsage = 2, kResource = 3 };

Graph load_graph(const std::string& path)
{
    if (path == "-")
        return read_graph(std::cin);
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open graph file '" + path + "'");
    return read_graph(in);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json rationals(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

Json integers(const std::vector<BigInt>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

Json support_json(const SupportReport& s)
{
    Json j = Json::object();
    j["support"] = std::vector<int>(s.support.begin(), s.support.end());
    j["exact"] = s.exact;
    j["vanishing_below"] = s.vanishing_below;
    j["rational_duality"] = s.is_rational_duality;
    j["formal_dimension"] = s.formal_dimension ? Json(*s.formal_dimension) : Json(nullptr);
    j["ends"] = s.ends ? Json(to_string(*s.ends)) : Json(nullptr);
    j["cd_q"] = s.cd_q ? Json(*s.cd_q) : Json(nullptr);
    j["vcd_z"] = s.vcd_z ? Json::array({s.vcd_z->first, s.vcd_z->second}) : Json(nullptr);
    j["cd_bound"] = s.cd_bound ? Json(*s.cd_bound) : Json(nullptr);
    j["cd_bound_is_equality"] = s.cd_bound_is_equality;
    Json w = Json::array();
    for (const auto& [sigma, deg] : s.witnesses) {
        Json sv = Json::array();
        for (Vertex v : sigma)
            sv.push_back(v);
        w.push_back({{"sigma", sv}, {"degree", deg}});
    }
    j["witnesses"] = std::move(w);
    return j;
}

Json convergence_json(const ConvergenceReport& c)
{
    Json j = Json::object();
    j["sufficient_pass"] = c.sufficient_pass;
    j["rho"] = Json::array({to_string(c.rho_lo), to_string(c.rho_hi)});
    j["rho_no_root"] = c.rho_no_root;
    j["in_region_univariate"] = c.in_region_univariate ? Json(*c.in_region_univariate) : Json(nullptr);
    j["region_ok"] = c.region_ok;
    return j;
}

Json betti_json(const BettiProfile& b)
{
    Json j = Json::object();
    j["reduced"] = b.reduced;
    if (b.torsion) {
        Json t = Json::array();
        for (const auto& level : *b.torsion)
            t.push_back(integers(level));
        j["torsion"] = std::move(t);
    }
    return j;
}

struct GraphInput
{
    std::string graph = "-";
    std::string assignment = "finite-const:1";
    int jobs = 1;
};

void add_graph_options(CLI::App* cmd, GraphInput& in, bool with_assignment)
{
    cmd->add_option("--graph", in.graph, "Graph file ('n m' header, then edges; '-' for stdin)");
    if (with_assignment)
        cmd->add_option("--assignment", in.assignment,
                        "finite:q1,...|finite-const:q|raag|infinite:<profile.json>");
    cmd->add_option("--jobs", in.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

Json invariants_bundle(const Graph& g, const GroupAssignment& a, bool integral, int jobs)
{
    const FlagComplex x = build_flag_complex(g);
    Json j = Json::object();
    j["n"] = g.vertex_count();
    j["digest"] = g.digest();
    j["dim"] = x.dim();
    j["f_vector"] = x.f_vector();
    j["h"] = integers(h_polynomial(x));
    j["betti"] = betti_json(betti(x, integral ? Ring::integral : Ring::rational));
    const EulerCharacteristics e = euler_characteristics(x, a);
    j["chi"] = to_string(e.chi_rational);
    j["chi_bg0"] = e.chi_bg0 ? Json(to_string(*e.chi_bg0)) : Json(nullptr);
    if (a.all_finite()) {
        const auto q = a.orders();
        const PuncturedProfile pp = punctured_profile(x, integral ? Ring::integral : Ring::rational, jobs);
        j["support"] = support_json(groupring_support_finite(x, q, pp));
        const ConvergenceReport c = convergence_check(x, q);
        j["convergence"] = convergence_json(c);
        j["l2"] = c.region_ok ? rationals(l2_betti_finite(x, q, pp)) : Json(nullptr);
    } else {
        const LinkProfile lp = link_profile(x, std::nullopt, Ring::rational, jobs);
        j["support"] = support_json(groupring_support_infinite(x, a, lp));
        j["l2"] = rationals(l2_betti_infinite(x, a, lp));
    }
    return j;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Flag complexes of random graphs and invariants of graph products"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "Sample G(n, p) and write it as a graph file");
    int s_n = 0, s_d = 0, s_trial = 0;
    double s_theta = 0.5, s_p = -1;
    std::uint64_t s_seed = 0;
    std::string s_out = "-";
    sample->add_option("--n", s_n, "Vertex count")->required()->check(CLI::NonNegativeNumber);
    auto* s_d_opt = sample->add_option("--d", s_d, "Target dimension (p from the regime formula)")->check(CLI::PositiveNumber);
    sample->add_option("--theta", s_theta, "Regime interpolation in (0,1)");
    auto* s_p_opt = sample->add_option("--p", s_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
    s_d_opt->excludes(s_p_opt);
    sample->add_option("--seed", s_seed, "Seed");
    sample->add_option("--trial", s_trial, "Stream index")->check(CLI::NonNegativeNumber);
    sample->add_option("--out", s_out, "Output file ('-' for stdout)");

    // invariants / l2 / support
    GraphInput inv_in, l2_in, sup_in;
    bool inv_integral = false, sup_integral = false;
    auto* invariants = app.add_subcommand("invariants", "Print the JSON invariant bundle of a graph product");
    add_graph_options(invariants, inv_in, true);
    invariants->add_flag("--integral", inv_integral, "Compute integral homology (torsion, vcd over Z)");
    auto* l2 = app.add_subcommand("l2", "Print the L2 Betti numbers of a graph product");
    add_graph_options(l2, l2_in, true);
    auto* support = app.add_subcommand("support", "Print the group-ring cohomology support report");
    add_graph_options(support, sup_in, true);
    support->add_flag("--integral", sup_integral, "Use integral punctured homology for vcd over Z");

    // garland
    GraphInput gar_in;
    int g_k = 1;
    double g_eps = 0.05;
    auto* garland = app.add_subcommand("garland", "Spectral vanishing certificate for H^{k-1}");
    add_graph_options(garland, gar_in, false);
    garland->add_option("--k", g_k, "Degree k (certifies H^{k-1} = 0)")->check(CLI::PositiveNumber);
    garland->add_option("--epsilon", g_eps, "Margin above k/(k+1)")->check(CLI::PositiveNumber);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo run over seeded trials");
    int e_n = 0, e_d = 0, e_trials = 1, e_jobs = 1;
    double e_theta = 0.5, e_p = -1, e_eps = 0.05, e_lambda = 0.5;
    std::uint64_t e_seed = 0;
    std::string e_assignment = "finite-const:1", e_checks = "all", e_out, e_graph, e_thresholds;
    bool e_quiet = false;
    std::size_t e_budget = kDefaultSimplexBudget;
    experiment->add_option("--n", e_n, "Vertex count")->check(CLI::NonNegativeNumber);
    experiment->add_option("--d", e_d, "Expected dimension")->check(CLI::PositiveNumber);
    experiment->add_option("--theta", e_theta, "Regime interpolation in (0,1)");
    experiment->add_option("--p", e_p, "Explicit edge probability")->check(CLI::Range(0.0, 1.0));
    experiment->add_option("--trials", e_trials, "Trial count")->check(CLI::PositiveNumber);
    experiment->add_option("--seed", e_seed, "Seed");
    experiment->add_option("--assignment", e_assignment, "finite:q1,...|finite-const:q|raag|infinite:<profile.json>");
    experiment->add_option("--checks", e_checks, "Comma-separated checks, or 'all'");
    experiment->add_option("--out-dir", e_out, "Directory for trials.jsonl and summary.csv");
    experiment->add_option("--jobs", e_jobs, "Worker threads")->check(CLI::PositiveNumber);
    experiment->add_option("--graph", e_graph, "Use this fixed graph in every trial");
    experiment->add_option("--thresholds", e_thresholds, "JSON file of minimum pass fractions per check");
    experiment->add_option("--garland-epsilon", e_eps, "Garland margin")->check(CLI::PositiveNumber);
    experiment->add_option("--ergap-lambda", e_lambda, "Spectral gap threshold for the ergap check");
    experiment->add_option("--simplex-budget", e_budget, "Abort a trial past this many simplices")
        ->check(CLI::PositiveNumber);
    experiment->add_flag("--quiet", e_quiet, "Do not print the summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*sample) {
            const double p = s_p_opt->count() ? s_p : s_d_opt->count() ? regime_p(s_n, s_d, s_theta).p : -1;
            if (p < 0)
                throw InvalidInput("sample needs --p or --d");
            const Graph g = sample_gnp(s_n, p, RngSeed{s_seed, static_cast<std::uint64_t>(s_trial)});
            if (s_out == "-") {
                write_graph(std::cout, g);
            } else {
                std::ofstream out(s_out);
                write_graph(out, g);
                if (!out)
                    throw std::runtime_error("cannot write '" + s_out + "'");
            }
            return kPass;
        }
        if (*invariants) {
            const Graph g = load_graph(inv_in.graph);
            const GroupAssignment a = parse_assignment(inv_in.assignment, g.vertex_count());
            std::cout << invariants_bundle(g, a, inv_integral, inv_in.jobs).dump(2) << '\n';
            return kPass;
        }
        if (*l2) {
            const Graph g = load_graph(l2_in.graph);
            const GroupAssignment a = parse_assignment(l2_in.assignment, g.vertex_count());
            const FlagComplex x = build_flag_complex(g);
            Json j = Json::object();
            if (a.all_finite()) {
                const auto q = a.orders();
                j["convergence"] = convergence_json(convergence_check(x, q));
                j["l2"] = rationals(l2_betti_finite(x, q, punctured_profile(x, Ring::rational, l2_in.jobs)));
            } else {
                j["l2"] = rationals(l2_betti_infinite(x, a, link_profile(x, std::nullopt, Ring::rational, l2_in.jobs)));
            }
            j["chi"] = to_string(euler_characteristics(x, a).chi_rational);
            std::cout << j.dump(2) << '\n';
            return kPass;
        }
        if (*support) {
            const Graph g = load_graph(sup_in.graph);
            const GroupAssignment a = parse_assignment(sup_in.assignment, g.vertex_count());
            const FlagComplex x = build_flag_complex(g);
            const SupportReport r =
                a.all_finite()
                    ? groupring_support_finite(
                          x, a.orders(), punctured_profile(x, sup_integral ? Ring::integral : Ring::rational, sup_in.jobs))
                    : groupring_support_infinite(x, a, link_profile(x, std::nullopt, Ring::rational, sup_in.jobs));
            std::cout << support_json(r).dump(2) << '\n';
            return kPass;
        }
        if (*garland) {
            const Graph g = load_graph(gar_in.graph);
            const FlagComplex x = build_flag_complex(g);
            const GarlandVerdict v = garland_certificate(x, g_k, g_eps);
            Json j = Json::object();
            j["k"] = v.k;
            j["epsilon"] = v.epsilon_margin;
            j["pure_skeleton"] = v.pure_skeleton;
            j["min_lambda2"] = v.min_lambda2;
            j["links_checked"] = v.links_checked;
            j["certified"] = v.certified;
            if (v.failing_simplex) {
                Json sv = Json::array();
                for (Vertex u : *v.failing_simplex)
                    sv.push_back(u);
                j["failing_simplex"] = sv;
                j["failing_lambda2"] = v.failing_lambda2.value_or(0.0);
            }
            std::cout << j.dump(2) << '\n';
            return kPass;
        }
        if (*experiment) {
            ExperimentConfig cfg;
            if (!e_graph.empty()) {
                cfg.fixed_graph = load_graph(e_graph);
                e_n = cfg.fixed_graph->vertex_count();
            } else if (!experiment->count("--n")) {
                throw InvalidInput("experiment needs --n or --graph");
            }
            cfg.n = e_n;
            if (experiment->count("--d"))
                cfg.d = e_d;
            cfg.theta = e_theta;
            if (experiment->count("--p"))
                cfg.p = e_p;
            cfg.trials = e_trials;
            cfg.seed = e_seed;
            cfg.assignment = parse_assignment(e_assignment, e_n);
            cfg.checks = parse_checks(e_checks);
            if (!e_out.empty())
                cfg.out_dir = e_out;
            cfg.jobs = e_jobs;
            if (!e_thresholds.empty())
                cfg.thresholds = parse_thresholds(slurp(e_thresholds));
            cfg.garland_epsilon = e_eps;
            cfg.ergap_lambda = e_lambda;
            cfg.simplex_budget = e_budget;
            if (!cfg.p && cfg.d && !cfg.fixed_graph && regime_p(cfg.n, *cfg.d, cfg.theta).clamped)
                std::cerr << "warning: regime p exceeds 1 at n = " << cfg.n << "; clamped to 1\n";

            const ExperimentSummary s = run_experiment(cfg);
            if (!e_quiet)
                std::cout << summary_csv(s);
            if (s.any_resource_failure)
                return kResource;
            return s.thresholds_met ? kPass : kThreshold;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    }
    return kUsage;
}
