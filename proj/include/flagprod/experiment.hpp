#pragma once

#include "flagprod/flag_complex.hpp"
#include "flagprod/graph.hpp"
#include "flagprod/group_invariants.hpp"
#include "flagprod/homology.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flagprod {

/// The closed set of per-trial predicates.
enum class Check {
    dimension,
    punctured,
    links,
    integral_window,
    support,
    ends,
    vcd,
    l2,
    euler_sign,
    garland,
    ergap,
};

inline constexpr std::array<Check, 11> kAllChecks = {
    Check::dimension, Check::punctured, Check::links,      Check::integral_window,
    Check::support,   Check::ends,      Check::vcd,        Check::l2,
    Check::euler_sign, Check::garland,  Check::ergap,
};

std::string_view check_name(Check c);
/// InvalidInput for an unknown name.
Check parse_check(std::string_view name);
/// Comma-separated list; "all" selects every check.
std::vector<Check> parse_checks(std::string_view list);

struct RegimeP
{
    double p = 0.0;
    bool clamped = false;
};

/// p = n^{-2/(d+theta)}, clamped to 1. Requires n >= 2, d >= 1, 0 < theta < 1.
RegimeP regime_p(int n, int d, double theta);

struct ExperimentConfig
{
    int n = 0;
    /// Expected dimension; needed by every check except ergap.
    std::optional<int> d;
    double theta = 0.5;
    /// Overrides regime_p(n, d, theta) when set.
    std::optional<double> p;
    int trials = 1;
    std::uint64_t seed = 0;
    /// Sized to n; defaults to Z/2 at every vertex.
    std::optional<GroupAssignment> assignment;
    std::vector<Check> checks;
    std::optional<std::filesystem::path> out_dir;
    int jobs = 1;
    /// Minimum pass fraction per check; checks without an entry always pass.
    std::map<Check, double> thresholds;
    /// Every trial uses this graph instead of sampling.
    std::optional<Graph> fixed_graph;
    double garland_epsilon = 0.05;
    double ergap_lambda = 0.5;
    std::size_t simplex_budget = kDefaultSimplexBudget;
    HomologyBudget homology_budget;
};

/// Fills defaults and rejects inconsistent configurations (InvalidInput).
ExperimentConfig validated(ExperimentConfig cfg);
/// The edge probability trials sample at (unset for a fixed graph).
std::optional<double> effective_p(const ExperimentConfig& cfg);

enum class Outcome { pass, fail, skipped };

struct Witness
{
    std::optional<Simplex> sigma;
    std::optional<int> degree;
    std::string detail;
};

struct CheckVerdict
{
    Outcome outcome = Outcome::skipped;
    std::string reason;  // for skipped checks
    std::vector<Witness> witnesses;
    double ms = 0.0;
};

struct TrialReport
{
    int trial = 0;
    int n = 0;
    std::optional<double> p;
    std::uint64_t seed = 0;
    std::string digest;
    /// Set when a resource budget stopped the trial; all checks then fail.
    std::optional<std::string> resource_failure;
    int dim = -1;
    std::vector<std::uint64_t> f_vector;
    std::map<Check, CheckVerdict> checks;

    std::optional<Rational> chi;
    std::optional<std::vector<Rational>> l2;
    std::optional<std::vector<int>> support;
    std::optional<Ends> ends;
    std::optional<int> cd_q;
    std::optional<std::pair<int, int>> vcd_z;

    double ms = 0.0;
};

/// The graph trial `index` uses: the fixed graph, or G(n, p) on stream
/// (seed, index).
Graph trial_graph(const ExperimentConfig& cfg, int index);

/// Runs all requested checks on one trial. Never throws on resource
/// exhaustion; the report is marked instead.
TrialReport run_trial(const ExperimentConfig& cfg, int index);

struct CheckSummary
{
    Check check = Check::dimension;
    bool requested = false;
    int trials = 0;  // trials where the check was evaluated
    int passes = 0;
    int skipped = 0;
    double mean_ms = 0.0;
    std::optional<double> pass_fraction() const;
    std::optional<double> threshold;
    bool threshold_met = true;
};

struct ExperimentSummary
{
    std::vector<TrialReport> trials;
    /// One row per check in kAllChecks order.
    std::vector<CheckSummary> checks;
    bool thresholds_met = true;
    bool any_resource_failure = false;
    const CheckSummary& at(Check c) const;
};

ExperimentSummary summarize(const ExperimentConfig& cfg, std::vector<TrialReport> trials);

/// Runs every trial (in parallel over trial indices) and, with an output
/// directory, writes trials.jsonl and summary.csv there. I/O failures throw
/// std::runtime_error after whatever could be written was written.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

struct JsonOptions
{
    bool include_timing = true;
};

/// One-line JSON record.
std::string to_json(const TrialReport& r, const JsonOptions& opt = {});
std::string summary_csv(const ExperimentSummary& s);

/// Thresholds from a JSON object {"check": fraction, ...}.
std::map<Check, double> parse_thresholds(const std::string& json_text);

/// "finite:q1,q2,...", "finite-const:q", "raag", or "infinite:<json file>".
GroupAssignment parse_assignment(std::string_view spec, int n);
/// InfiniteFactor from {"reduced_betti":[...], "l2_betti":["p/q",...],
/// "euler_reduced":e, "cd":c, "groupring_support_min":k}.
InfiniteFactor parse_infinite_factor(const std::string& json_text);

}  // namespace flagprod
