#include "flagprod/experiment.hpp"

#include "flagprod/errors.hpp"
#include "flagprod/garland.hpp"
#include "flagprod/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

namespace flagprod {

namespace {

constexpr std::array<std::string_view, 11> kNames = {
    "dimension", "punctured", "links", "integral_window", "support", "ends",
    "vcd",       "l2",        "euler_sign", "garland",   "ergap",
};

constexpr std::size_t kMaxWitnesses = 8;

int floor_div(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

double elapsed_ms(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::string_view check_name(Check c)
{
    return kNames[static_cast<std::size_t>(c)];
}

Check parse_check(std::string_view name)
{
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name)
            return kAllChecks[i];
    throw InvalidInput("unknown check '" + std::string(name) + "'");
}

std::vector<Check> parse_checks(std::string_view list)
{
    if (list == "all")
        return {kAllChecks.begin(), kAllChecks.end()};
    std::set<Check> seen;
    std::vector<Check> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t end = std::min(list.find(',', start), list.size());
        const std::string_view item = list.substr(start, end - start);
        if (!item.empty()) {
            const Check c = parse_check(item);
            if (seen.insert(c).second)
                out.push_back(c);
        }
        start = end + 1;
    }
    return out;
}

RegimeP regime_p(int n, int d, double theta)
{
    if (n < 2)
        throw InvalidInput("regime_p: need n >= 2");
    if (d < 1)
        throw InvalidInput("regime_p: need d >= 1");
    if (!(theta > 0.0 && theta < 1.0))
        throw InvalidInput("regime_p: theta must lie in (0, 1)");
    RegimeP r;
    r.p = std::pow(static_cast<double>(n), -2.0 / (d + theta));
    if (r.p > 1.0) {
        r.p = 1.0;
        r.clamped = true;
    }
    return r;
}

ExperimentConfig validated(ExperimentConfig cfg)
{
    if (cfg.fixed_graph)
        cfg.n = cfg.fixed_graph->vertex_count();
    if (cfg.n < 0)
        throw InvalidInput("n must be >= 0");
    if (cfg.trials < 1)
        throw InvalidInput("trials must be >= 1");
    if (cfg.jobs < 1)
        throw InvalidInput("jobs must be >= 1");
    if (cfg.d && *cfg.d < 1)
        throw InvalidInput("d must be >= 1");
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0))
        throw InvalidInput("theta must lie in (0, 1)");
    if (cfg.p && !(*cfg.p >= 0.0 && *cfg.p <= 1.0))
        throw InvalidInput("p must lie in [0, 1]");
    if (!cfg.fixed_graph && !cfg.p && !cfg.d)
        throw InvalidInput("give d (with theta) or an explicit p");
    for (Check c : cfg.checks)
        if (c != Check::ergap && !cfg.d)
            throw InvalidInput("check '" + std::string(check_name(c)) + "' needs the expected dimension d");
    if (!(cfg.garland_epsilon > 0.0))
        throw InvalidInput("garland epsilon must be positive");
    for (const auto& [c, t] : cfg.thresholds)
        if (!(t >= 0.0 && t <= 1.0))
            throw InvalidInput("threshold for '" + std::string(check_name(c)) + "' must lie in [0, 1]");
    if (!cfg.assignment)
        cfg.assignment = GroupAssignment::constant(FiniteFactor{1}, cfg.n);
    if (cfg.assignment->size() != cfg.n)
        throw InvalidInput("assignment has " + std::to_string(cfg.assignment->size()) + " factors for " +
                           std::to_string(cfg.n) + " vertices");
    return cfg;
}

std::optional<double> effective_p(const ExperimentConfig& cfg)
{
    if (cfg.fixed_graph)
        return std::nullopt;
    if (cfg.p)
        return cfg.p;
    return regime_p(cfg.n, *cfg.d, cfg.theta).p;
}

Graph trial_graph(const ExperimentConfig& cfg, int index)
{
    if (cfg.fixed_graph)
        return *cfg.fixed_graph;
    return sample_gnp(cfg.n, *effective_p(cfg), RngSeed{cfg.seed, static_cast<std::uint64_t>(index)});
}

// ---------------------------------------------------------------- one trial

namespace {

class TrialRun
{
public:
    TrialRun(const ExperimentConfig& cfg, const FlagComplex& x, TrialReport& report)
        : cfg_(cfg), x_(x), report_(report), a_(*cfg.assignment), d_(cfg.d.value_or(0)), mid_(d_ / 2)
    {
        for (Check c : cfg.checks)
            wanted_.insert(c);
    }

    void run()
    {
        if (!x_.truncated())
            report_.chi = euler_characteristics(x_, a_).chi_rational;
        // checks first, so each one is charged for the caches it fills
        for (Check c : cfg_.checks) {
            const auto start = std::chrono::steady_clock::now();
            CheckVerdict v = evaluate(c);
            v.ms = elapsed_ms(start);
            report_.checks[c] = std::move(v);
        }
        invariants();
    }

private:
    bool wants(Check c) const { return wanted_.count(c) != 0; }
    bool finite() const { return a_.all_finite(); }

    const PuncturedProfile& punctured()
    {
        if (!pp_) {
            const bool integral = finite() && (wants(Check::vcd) || wants(Check::integral_window));
            pp_ = punctured_profile(x_, integral ? Ring::integral : Ring::rational, 1, cfg_.homology_budget);
        }
        return *pp_;
    }

    const PuncturedProfile& punctured_integral()
    {
        const PuncturedProfile& pp = punctured();
        if (pp.ring != Ring::integral) {
            pp_ = punctured_profile(x_, Ring::integral, 1, cfg_.homology_budget);
        }
        return *pp_;
    }

    const LinkProfile& links_low()
    {
        if (lp_all_)
            return *lp_all_;
        if (!lp_low_)
            lp_low_ = link_profile(x_, mid_ - 1, Ring::rational, 1, cfg_.homology_budget);
        return *lp_low_;
    }

    const LinkProfile& links_all()
    {
        if (!lp_all_)
            lp_all_ = link_profile(x_, std::nullopt, Ring::rational, 1, cfg_.homology_budget);
        return *lp_all_;
    }

    const SupportReport& support_report()
    {
        if (!support_) {
            if (finite())
                support_ = groupring_support_finite(x_, a_.orders(), punctured());
            else
                support_ = groupring_support_infinite(x_, a_, links_all());
        }
        return *support_;
    }

    const BettiProfile& betti_x()
    {
        if (!betti_x_)
            betti_x_ = pp_ ? pp_->at(Simplex{}) : betti(x_, Ring::rational, cfg_.homology_budget);
        return *betti_x_;
    }

    void invariants()
    {
        if (wants(Check::support) || wants(Check::ends) || wants(Check::vcd)) {
            const SupportReport& s = support_report();
            report_.support = std::vector<int>(s.support.begin(), s.support.end());
            report_.ends = s.ends;
            report_.cd_q = s.cd_q;
            report_.vcd_z = s.vcd_z;
            if (!finite() && s.cd_bound && s.cd_bound_is_equality && !report_.cd_q)
                report_.cd_q = s.cd_bound;
        }
        if (wants(Check::l2))
            compute_l2();
    }

    void compute_l2()
    {
        if (l2_done_)
            return;
        l2_done_ = true;
        if (finite()) {
            const auto q = a_.orders();
            if (convergence_check(x_, q).region_ok)
                report_.l2 = l2_betti_finite(x_, q, punctured());
        } else {
            report_.l2 = l2_betti_infinite(x_, a_, links_all());
        }
    }

    static void add(CheckVerdict& v, Witness w)
    {
        if (v.witnesses.size() < kMaxWitnesses)
            v.witnesses.push_back(std::move(w));
        v.outcome = Outcome::fail;
    }

    static CheckVerdict skipped(std::string reason)
    {
        CheckVerdict v;
        v.outcome = Outcome::skipped;
        v.reason = std::move(reason);
        return v;
    }

    static CheckVerdict passing()
    {
        CheckVerdict v;
        v.outcome = Outcome::pass;
        return v;
    }

    CheckVerdict evaluate(Check c)
    {
        switch (c) {
        case Check::dimension: return check_dimension();
        case Check::punctured: return check_punctured();
        case Check::links: return check_links();
        case Check::integral_window: return check_integral_window();
        case Check::support: return check_support();
        case Check::ends: return check_ends();
        case Check::vcd: return check_vcd();
        case Check::l2: return check_l2();
        case Check::euler_sign: return check_euler_sign();
        case Check::garland: return check_garland();
        case Check::ergap: return check_ergap();
        }
        return skipped("unknown check");
    }

    CheckVerdict check_dimension()
    {
        CheckVerdict v = passing();
        if (x_.dim() != d_)
            add(v, {std::nullopt, x_.dim(), "dim X = " + std::to_string(x_.dim())});
        return v;
    }

    CheckVerdict check_punctured()
    {
        CheckVerdict v = passing();
        const PuncturedProfile& pp = punctured();
        for (std::size_t j = 0; j < pp.size(); ++j) {
            const BettiProfile& bp = pp.profiles[j];
            if (bp.dim != d_)
                add(v, {pp.simplices[j], std::nullopt, "dim X-sigma = " + std::to_string(bp.dim)});
            for (int i = -1; i <= bp.dim; ++i)
                if (i != mid_ && bp.betti(i) > 0)
                    add(v, {pp.simplices[j], i, "b = " + std::to_string(bp.betti(i))});
        }
        if (pp.at(Simplex{}).betti(mid_) == 0)
            add(v, {Simplex{}, mid_, "middle homology of X vanishes"});
        return v;
    }

    CheckVerdict check_links()
    {
        CheckVerdict v = passing();
        const LinkProfile& lp = links_low();
        for (std::size_t j = 0; j < lp.size(); ++j) {
            const Simplex& s = lp.simplices[j];
            if (s.dim() >= mid_)
                continue;
            const int l = s.dim() + 1;
            const BettiProfile& bp = lp.profiles[j];
            if (bp.dim < d_ - 2 * l)
                add(v, {s, std::nullopt, "dim Lk = " + std::to_string(bp.dim)});
            for (int i = -1; i < (d_ - 2 * l) / 2; ++i)
                if (bp.betti(i) > 0)
                    add(v, {s, i, "b = " + std::to_string(bp.betti(i))});
        }
        return v;
    }

    CheckVerdict check_integral_window()
    {
        if (!finite())
            return skipped("integral window is evaluated for finite vertex groups only");
        CheckVerdict v = passing();
        const PuncturedProfile& pp = punctured_integral();
        const int low = floor_div(d_ - 2, 4);
        for (std::size_t j = 0; j < pp.size(); ++j) {
            const BettiProfile& bp = pp.profiles[j];
            for (int i = -1; i <= bp.dim; ++i) {
                if (i > low && i <= mid_)
                    continue;
                if (bp.betti(i) > 0 || bp.has_torsion(i))
                    add(v, {pp.simplices[j], i, bp.has_torsion(i) ? "torsion" : "free part"});
            }
        }
        return v;
    }

    CheckVerdict check_support()
    {
        CheckVerdict v = passing();
        const SupportReport& s = support_report();
        const int expected = mid_ + 1;
        if (finite()) {
            for (const auto& [sigma, deg] : s.witnesses)
                if (deg != expected)
                    add(v, {sigma, deg, "nonzero off the middle degree"});
        } else if (s.vanishing_below < expected) {
            for (const auto& [sigma, deg] : s.witnesses)
                if (deg < expected)
                    add(v, {sigma, deg, "nonzero below the middle degree"});
        }
        if (!s.support.count(expected))
            add(v, {std::nullopt, expected, "vanishes in the middle degree"});
        return v;
    }

    CheckVerdict check_ends()
    {
        const SupportReport& s = support_report();
        if (!s.ends)
            return skipped("ends are not determined for these vertex groups");
        const Ends expected = d_ == 1 ? Ends::infinite : Ends::one;
        CheckVerdict v = passing();
        if (*s.ends != expected)
            add(v, {std::nullopt, std::nullopt, std::string("ends = ") + to_string(*s.ends)});
        return v;
    }

    CheckVerdict check_vcd()
    {
        const SupportReport& s = support_report();
        CheckVerdict v = passing();
        if (finite()) {
            if (!s.cd_q || *s.cd_q != mid_ + 1)
                add(v, {std::nullopt, s.cd_q, "cd_Q differs from the middle degree + 1"});
            if (!s.vcd_z || s.vcd_z->first != s.vcd_z->second) {
                add(v, {std::nullopt, std::nullopt, "vcd over Z not determined"});
            } else if (s.vcd_z->first != mid_ + 1 && s.vcd_z->first != mid_ + 2) {
                add(v, {std::nullopt, s.vcd_z->first, "vcd over Z out of range"});
            }
            return v;
        }
        if (!a_.is_constant())
            return skipped("cd equality needs a constant sequence of vertex groups");
        const int cd = x_.vertex_set().any() ? a_.infinite_at(static_cast<Vertex>(x_.vertex_set().find_first())).cd : 0;
        const int value = s.exact && s.cd_q ? *s.cd_q : s.cd_bound.value_or(-1);
        if (value != (d_ + 1) * cd)
            add(v, {std::nullopt, value, "cd = " + std::to_string(value)});
        return v;
    }

    CheckVerdict check_l2()
    {
        compute_l2();
        if (!report_.l2) {
            if (finite())
                return skipped("1/q is not certified to lie in the region of convergence");
            return skipped("no L2 vector");
        }
        if (!finite() && !a_.is_raag())
            return skipped("no regime statement for the L2 Betti numbers of general infinite vertex groups");
        CheckVerdict v = passing();
        const auto& l2 = *report_.l2;
        const int expected = mid_ + 1;
        for (std::size_t m = 0; m < l2.size(); ++m) {
            const bool nonzero = l2[m] != 0;
            if (nonzero != (static_cast<int>(m) == expected))
                add(v, {std::nullopt, static_cast<int>(m), "L2 b = " + flagprod::to_string(l2[m])});
        }
        if (static_cast<int>(l2.size()) <= expected)
            add(v, {std::nullopt, expected, "L2 b = 0"});
        return v;
    }

    CheckVerdict check_euler_sign()
    {
        if (!finite() && !a_.is_raag())
            return skipped("sign of chi is evaluated for finite vertex groups and right-angled Artin groups");
        CheckVerdict v = passing();
        const int expected = mid_ % 2 == 0 ? -1 : 1;  // (-1)^(mid+1)
        const int got = sgn(*report_.chi);
        if (got != expected)
            add(v, {std::nullopt, std::nullopt, "chi = " + flagprod::to_string(*report_.chi)});
        return v;
    }

    CheckVerdict check_garland()
    {
        const int k = std::max(1, mid_);
        if (k >= x_.dim())
            return skipped("certificate at k = " + std::to_string(k) + " needs dim X > k");
        const GarlandVerdict g = garland_certificate(x_, k, cfg_.garland_epsilon);
        CheckVerdict v = passing();
        std::string detail = std::string("certified = ") + (g.certified ? "true" : "false") +
                             ", min lambda2 = " + std::to_string(g.min_lambda2);
        const std::int64_t b = betti_x().betti(k - 1);
        if (g.certified && b != 0)
            add(v, {std::nullopt, k - 1, "certified but b = " + std::to_string(b)});
        else
            v.witnesses.push_back({g.failing_simplex, k, detail});
        return v;
    }

    CheckVerdict check_ergap()
    {
        CheckVerdict v = passing();
        try {
            const SpectralReport s = spectral_report(x_.skeleton(), x_.vertex_set());
            if (!s.connected)
                add(v, {std::nullopt, std::nullopt, "disconnected"});
            else if (!(s.lambda2 > cfg_.ergap_lambda))
                add(v, {std::nullopt, std::nullopt, "lambda2 = " + std::to_string(s.lambda2)});
        } catch (const DegenerateDegree&) {
            add(v, {std::nullopt, std::nullopt, "isolated vertex"});
        } catch (const InvalidInput&) {
            add(v, {std::nullopt, std::nullopt, "empty graph"});
        }
        return v;
    }

    const ExperimentConfig& cfg_;
    const FlagComplex& x_;
    TrialReport& report_;
    const GroupAssignment& a_;
    int d_;
    int mid_;
    std::set<Check> wanted_;
    std::optional<PuncturedProfile> pp_;
    std::optional<LinkProfile> lp_low_, lp_all_;
    std::optional<SupportReport> support_;
    bool l2_done_ = false;
    std::optional<BettiProfile> betti_x_;
};

}  // namespace

TrialReport run_trial(const ExperimentConfig& cfg_in, int index)
{
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = validated(cfg_in);
    TrialReport r;
    r.trial = index;
    r.n = cfg.n;
    r.p = effective_p(cfg);
    r.seed = cfg.seed;

    const Graph g = trial_graph(cfg, index);
    r.digest = g.digest();
    try {
        // dimension (and the 1-skeleton) are all these checks look at
        const bool shallow = cfg.d && std::all_of(cfg.checks.begin(), cfg.checks.end(), [](Check c) {
            return c == Check::dimension || c == Check::ergap;
        });
        const FlagComplex x =
            build_flag_complex(g, shallow ? std::optional<int>(*cfg.d + 2) : std::nullopt, cfg.simplex_budget);
        r.dim = x.dim();
        r.f_vector = x.f_vector();
        TrialRun(cfg, x, r).run();
    } catch (const ResourceError& e) {
        r.resource_failure = e.what();
        for (Check c : cfg.checks) {
            CheckVerdict v;
            v.outcome = Outcome::fail;
            v.reason = std::string("failed-resource: ") + e.what();
            r.checks[c] = std::move(v);
        }
        r.chi.reset();
        r.l2.reset();
        r.support.reset();
        r.ends.reset();
        r.cd_q.reset();
        r.vcd_z.reset();
    }
    r.ms = elapsed_ms(start);
    return r;
}

// ------------------------------------------------------------- aggregation

std::optional<double> CheckSummary::pass_fraction() const
{
    if (trials == 0)
        return std::nullopt;
    return static_cast<double>(passes) / trials;
}

const CheckSummary& ExperimentSummary::at(Check c) const
{
    return checks[static_cast<std::size_t>(c)];
}

ExperimentSummary summarize(const ExperimentConfig& cfg, std::vector<TrialReport> trials)
{
    ExperimentSummary s;
    std::sort(trials.begin(), trials.end(), [](const TrialReport& a, const TrialReport& b) { return a.trial < b.trial; });
    s.trials = std::move(trials);
    const std::set<Check> wanted(cfg.checks.begin(), cfg.checks.end());
    for (Check c : kAllChecks) {
        CheckSummary row;
        row.check = c;
        row.requested = wanted.count(c) != 0;
        double ms = 0.0;
        int timed = 0;
        for (const auto& t : s.trials) {
            auto it = t.checks.find(c);
            if (it == t.checks.end())
                continue;
            ms += it->second.ms;
            ++timed;
            switch (it->second.outcome) {
            case Outcome::pass: ++row.trials; ++row.passes; break;
            case Outcome::fail: ++row.trials; break;
            case Outcome::skipped: ++row.skipped; break;
            }
        }
        row.mean_ms = timed ? ms / timed : 0.0;
        if (auto th = cfg.thresholds.find(c); row.requested && th != cfg.thresholds.end()) {
            row.threshold = th->second;
            const auto frac = row.pass_fraction();
            row.threshold_met = frac && *frac >= th->second;
        }
        s.thresholds_met = s.thresholds_met && row.threshold_met;
        s.checks.push_back(row);
    }
    for (const auto& t : s.trials)
        s.any_resource_failure = s.any_resource_failure || t.resource_failure.has_value();
    return s;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg_in)
{
    const ExperimentConfig cfg = validated(cfg_in);
    std::vector<TrialReport> reports(static_cast<std::size_t>(cfg.trials));
    parallel_for(reports.size(), cfg.jobs, [&](std::size_t i) { reports[i] = run_trial(cfg, static_cast<int>(i)); });
    ExperimentSummary s = summarize(cfg, std::move(reports));

    if (cfg.out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*cfg.out_dir, ec);
        if (ec)
            throw std::runtime_error("cannot create " + cfg.out_dir->string() + ": " + ec.message());
        std::string failure;
        {
            std::ofstream out(*cfg.out_dir / "trials.jsonl");
            for (const auto& t : s.trials)
                out << to_json(t) << '\n';
            if (!out)
                failure = "cannot write " + (*cfg.out_dir / "trials.jsonl").string();
        }
        {
            std::ofstream out(*cfg.out_dir / "summary.csv");
            out << summary_csv(s);
            if (!out && failure.empty())
                failure = "cannot write " + (*cfg.out_dir / "summary.csv").string();
        }
        if (!failure.empty())
            throw std::runtime_error(failure);
    }
    return s;
}

}  // namespace flagprod
