#include "flagprod/group_invariants.hpp"

#include "flagprod/errors.hpp"
#include "flagprod/polynomial.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace flagprod {

InfiniteFactor infinite_cyclic()
{
    InfiniteFactor z;
    z.reduced_betti = {0, 1};
    z.l2_betti = {Rational(0), Rational(0)};
    z.euler_reduced = -1;
    z.cd = 1;
    z.groupring_support_min = 1;
    return z;
}

// ------------------------------------------------------------ assignment

GroupAssignment::GroupAssignment(std::vector<FactorSpec> factors) : factors_(std::move(factors))
{
    std::size_t finite = 0;
    for (std::size_t v = 0; v < factors_.size(); ++v) {
        const std::string where = "vertex " + std::to_string(v) + ": ";
        if (const auto* f = std::get_if<FiniteFactor>(&factors_[v])) {
            ++finite;
            if (f->q < 1)
                throw InvalidInput(where + "finite factor needs q >= 1 (order q + 1 >= 2)");
            continue;
        }
        const auto& g = std::get<InfiniteFactor>(factors_[v]);
        if (g.cd < 1)
            throw InvalidInput(where + "infinite factor needs cd >= 1");
        if (g.groupring_support_min < 1)
            throw InvalidInput(where + "infinite factor has H^0(G; QG) = 0, so the minimum support degree is >= 1");
        for (auto b : g.reduced_betti)
            if (b < 0)
                throw InvalidInput(where + "negative Betti number");
        if (!g.reduced_betti.empty() && g.reduced_betti[0] != 0)
            throw InvalidInput(where + "reduced Betti number in degree 0 must vanish");
        for (const auto& l : g.l2_betti)
            if (l < 0)
                throw InvalidInput(where + "negative L2 Betti number");
    }
    if (finite != 0 && finite != factors_.size())
        throw InvalidInput("mixed finite and infinite vertex groups are not supported");
    finite_ = finite == factors_.size();
    constant_ = std::all_of(factors_.begin(), factors_.end(), [&](const FactorSpec& f) { return f == factors_[0]; });
}

GroupAssignment GroupAssignment::constant(const FactorSpec& f, int n)
{
    if (n < 0)
        throw InvalidInput("negative vertex count");
    return GroupAssignment(std::vector<FactorSpec>(static_cast<std::size_t>(n), f));
}

GroupAssignment GroupAssignment::per_vertex(std::vector<FactorSpec> factors)
{
    return GroupAssignment(std::move(factors));
}

GroupAssignment GroupAssignment::finite_orders(const std::vector<std::int64_t>& q)
{
    std::vector<FactorSpec> f;
    f.reserve(q.size());
    for (auto qi : q)
        f.emplace_back(FiniteFactor{qi});
    return GroupAssignment(std::move(f));
}

bool GroupAssignment::is_raag() const
{
    if (finite_)
        return factors_.empty();
    const InfiniteFactor z = infinite_cyclic();
    return std::all_of(factors_.begin(), factors_.end(), [&](const FactorSpec& f) {
        const auto& g = std::get<InfiniteFactor>(f);
        return g.reduced_betti == z.reduced_betti && g.euler_reduced == z.euler_reduced && g.cd == z.cd &&
               g.groupring_support_min == z.groupring_support_min &&
               std::all_of(g.l2_betti.begin(), g.l2_betti.end(), [](const Rational& r) { return r == 0; });
    });
}

std::vector<std::int64_t> GroupAssignment::orders() const
{
    if (!finite_)
        throw InvalidInput("orders() needs an all-finite assignment");
    std::vector<std::int64_t> q;
    q.reserve(factors_.size());
    for (const auto& f : factors_)
        q.push_back(std::get<FiniteFactor>(f).q);
    return q;
}

namespace {

void check_size(const FlagComplex& x, std::size_t n, const char* what)
{
    if (static_cast<int>(n) != x.ground_size())
        throw InvalidInput(std::string(what) + ": expected one entry for each of the " +
                           std::to_string(x.ground_size()) + " ground-set vertices, got " + std::to_string(n));
}

void check_orders(const FlagComplex& x, const std::vector<std::int64_t>& q)
{
    check_size(x, q.size(), "orders");
    for (std::size_t v = 0; v < q.size(); ++v)
        if (q[v] < 1)
            throw InvalidInput("vertex " + std::to_string(v) + ": q must be >= 1");
}

// Product of graded series truncated to degree `cap`.
std::vector<BigInt> graded_product(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int cap)
{
    std::vector<BigInt> out(static_cast<std::size_t>(cap + 1), 0);
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= cap; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= cap; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<Rational> graded_product(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

std::vector<BigInt> reduced_profile(const FactorSpec& f, Field field, int cap, Vertex v)
{
    std::vector<BigInt> p(static_cast<std::size_t>(cap + 1), 0);
    if (const auto* fin = std::get_if<FiniteFactor>(&f)) {
        if (field == Field::rational)
            return p;
        const std::int64_t order = fin->q + 1;
        if (order % 2 == 1)
            return p;
        if (order != 2)
            throw InvalidInput("vertex " + std::to_string(v) + ": F2 Betti numbers of a finite group of order " +
                               std::to_string(order) + " are not determined by its order");
        for (int m = 1; m <= cap; ++m)
            p[static_cast<std::size_t>(m)] = 1;
        return p;
    }
    const auto& g = std::get<InfiniteFactor>(f);
    for (std::size_t m = 0; m < g.reduced_betti.size() && static_cast<int>(m) <= cap; ++m)
        p[m] = static_cast<long>(g.reduced_betti[m]);
    return p;
}

bool all_zero(const std::vector<BigInt>& p)
{
    return std::all_of(p.begin(), p.end(), [](const BigInt& b) { return b == 0; });
}

Rational inverse(std::int64_t m)
{
    Rational r(BigInt(1), BigInt(static_cast<long>(m)));
    r.canonicalize();
    return r;
}

Evaluation as_evaluation(const std::vector<Rational>& t)
{
    return Evaluation(t);
}

}  // namespace

// ----------------------------------------------------- Betti numbers of BG

std::vector<BigInt> betti_classifying_space(const FlagComplex& x, const GroupAssignment& a, Field field,
                                            int degree_cap)
{
    check_size(x, static_cast<std::size_t>(a.size()), "assignment");
    if (degree_cap < 0)
        throw InvalidInput("degree cap must be >= 0");
    const int n = x.ground_size();
    std::vector<std::vector<BigInt>> profile(static_cast<std::size_t>(n));
    std::vector<char> acyclic(static_cast<std::size_t>(n), 1);
    for (Vertex v = 0; v < n; ++v) {
        if (!x.vertex_set().test(static_cast<std::size_t>(v)))
            continue;
        profile[static_cast<std::size_t>(v)] = reduced_profile(a.at(v), field, degree_cap, v);
        acyclic[static_cast<std::size_t>(v)] = all_zero(profile[static_cast<std::size_t>(v)]);
    }

    std::vector<BigInt> b(static_cast<std::size_t>(degree_cap + 1), 0);
    x.for_each([&](const Simplex& s) {
        std::vector<BigInt> term(static_cast<std::size_t>(degree_cap + 1), 0);
        term[0] = 1;
        for (Vertex v : s) {
            if (acyclic[static_cast<std::size_t>(v)])
                return;
            term = graded_product(term, profile[static_cast<std::size_t>(v)], degree_cap);
        }
        for (std::size_t m = 0; m < term.size(); ++m)
            b[m] += term[m];
    });
    return b;
}

// ------------------------------------------------------ Euler characteristics

EulerCharacteristics euler_characteristics(const FlagComplex& x, const GroupAssignment& a)
{
    check_size(x, static_cast<std::size_t>(a.size()), "assignment");
    const int n = x.ground_size();
    EulerCharacteristics out;
    std::vector<Rational> t(static_cast<std::size_t>(n), Rational(0));
    if (a.all_finite()) {
        Rational scale = 1;
        for (Vertex v = 0; v < n; ++v) {
            const Rational q = static_cast<long>(std::get<FiniteFactor>(a.at(v)).q);
            t[static_cast<std::size_t>(v)] = -q / (1 + q);
            if (x.vertex_set().test(static_cast<std::size_t>(v)))
                scale *= 1 + q;
        }
        out.chi_rational = f_polynomial(x, as_evaluation(t));
        out.chi_bg0 = scale * out.chi_rational;
        out.chi_bg0->canonicalize();
    } else {
        for (Vertex v = 0; v < n; ++v)
            t[static_cast<std::size_t>(v)] = static_cast<long>(a.infinite_at(v).euler_reduced);
        out.chi_rational = f_polynomial(x, as_evaluation(t));
    }
    return out;
}

std::vector<BigInt> bg0_betti(const FlagComplex& x, const std::vector<std::int64_t>& q, int size_limit)
{
    check_orders(x, q);
    std::vector<Vertex> verts;
    for (auto i = x.vertex_set().find_first(); i != VertexSet::npos; i = x.vertex_set().find_next(i))
        verts.push_back(static_cast<Vertex>(i));
    const int m = static_cast<int>(verts.size());
    if (m > size_limit || m >= 63)
        throw ResourceError("bg0_betti: " + std::to_string(m) + " vertices exceed the subset-enumeration limit of " +
                            std::to_string(size_limit));

    std::vector<BigInt> b(static_cast<std::size_t>(std::max(x.dim(), -1) + 2), 0);
    b[0] = 1;
    const std::uint64_t subsets = std::uint64_t{1} << m;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        VertexSet sub(static_cast<std::size_t>(x.ground_size()));
        std::vector<Vertex> members;
        for (int j = 0; j < m; ++j)
            if (mask >> j & 1) {
                sub.set(static_cast<std::size_t>(verts[static_cast<std::size_t>(j)]));
                members.push_back(verts[static_cast<std::size_t>(j)]);
            }
        if (x.contains(Simplex(members)))
            continue;
        const BettiProfile bp = betti(induced(x, sub), Ring::rational);
        BigInt qi = 1;
        for (Vertex v : members)
            qi *= static_cast<long>(q[static_cast<std::size_t>(v)]);
        for (int i = 0; i <= bp.dim; ++i)
            if (bp.betti(i) != 0)
                b[static_cast<std::size_t>(i + 1)] += BigInt(static_cast<long>(bp.betti(i))) * qi;
    }
    return b;
}

const char* to_string(Ends e)
{
    switch (e) {
    case Ends::zero: return "0";
    case Ends::one: return "1";
    case Ends::two: return "2";
    case Ends::infinite: return "inf";
    }
    return "?";
}

// ----------------------------------------------------- finite vertex groups

namespace {

// X is the suspension of a simplex: exactly one non-adjacent pair.
std::optional<std::pair<Vertex, Vertex>> suspension_poles(const FlagComplex& x)
{
    std::vector<Vertex> verts;
    for (auto i = x.vertex_set().find_first(); i != VertexSet::npos; i = x.vertex_set().find_next(i))
        verts.push_back(static_cast<Vertex>(i));
    std::optional<std::pair<Vertex, Vertex>> pair;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (!x.skeleton().adjacent(verts[i], verts[j])) {
                if (pair)
                    return std::nullopt;
                pair = std::make_pair(verts[i], verts[j]);
            }
    return pair;
}

void record_witness(SupportReport& r, const Simplex& s, int degree)
{
    if (r.support.insert(degree).second)
        r.witnesses.emplace_back(s, degree);
}

void finish_duality(SupportReport& r)
{
    if (!r.support.empty())
        r.vanishing_below = *r.support.begin();
    if (r.exact && r.support.size() == 1) {
        r.is_rational_duality = true;
        r.formal_dimension = *r.support.begin();
    }
    if (r.exact && !r.support.empty())
        r.cd_q = *r.support.rbegin();
}

}  // namespace

SupportReport groupring_support_finite(const FlagComplex& x, const std::vector<std::int64_t>& q,
                                       const PuncturedProfile& pp)
{
    check_orders(x, q);
    SupportReport r;
    r.exact = true;
    bool integral = pp.ring == Ring::integral;
    int vcd = -1;
    bool punctured_disconnected = false;
    x.for_each([&](const Simplex& s) {
        const BettiProfile& bp = pp.at(s);
        for (int i = -1; i <= bp.dim; ++i) {
            if (bp.betti(i) > 0)
                record_witness(r, s, i + 1);
            if (integral && bp.integral_cohomology_nonzero(i))
                vcd = std::max(vcd, i + 1);
        }
        if (integral && bp.integral_cohomology_nonzero(bp.dim + 1))
            vcd = std::max(vcd, bp.dim + 2);
        if (bp.betti(0) > 0)
            punctured_disconnected = true;
    });
    finish_duality(r);

    if (x.is_simplex()) {
        r.ends = Ends::zero;
    } else if (auto poles = suspension_poles(x);
               poles && q[static_cast<std::size_t>(poles->first)] == 1 && q[static_cast<std::size_t>(poles->second)] == 1) {
        r.ends = Ends::two;
    } else {
        r.ends = punctured_disconnected ? Ends::infinite : Ends::one;
    }

    const int cdq = r.cd_q.value_or(0);
    if (integral)
        r.vcd_z = std::make_pair(vcd, vcd);
    else
        r.vcd_z = std::make_pair(cdq, std::max(cdq, x.dim() + 1));
    return r;
}

// ------------------------------------------------------------ growth series

Rational growth_series_inverse(const FlagComplex& x, const Evaluation& t)
{
    const int n = x.ground_size();
    std::vector<Rational> sub(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        const Rational tv = std::holds_alternative<Rational>(t)
                                ? std::get<Rational>(t)
                                : std::get<std::vector<Rational>>(t).at(static_cast<std::size_t>(v));
        if (tv == -1)
            throw PoleError("growth series: t_" + std::to_string(v) + " = -1 is a pole of -t/(1+t)");
        sub[static_cast<std::size_t>(v)] = -tv / (1 + tv);
    }
    if (const auto* vec = std::get_if<std::vector<Rational>>(&t))
        check_size(x, vec->size(), "evaluation");
    return f_polynomial(x, as_evaluation(sub));
}

Rational growth_series_inverse_univariate(const FlagComplex& x, const Rational& t)
{
    if (t == -1)
        throw PoleError("growth series: t = -1 is a pole");
    const IntPoly h = reflect(h_polynomial(x));
    Rational denom = 1;
    for (int i = 0; i <= x.dim(); ++i)
        denom *= 1 + t;
    Rational out = evaluate(h, t) / denom;
    out.canonicalize();
    return out;
}

namespace {

struct RootLocator
{
    bool trivial = false;  // h(-t) is a nonzero constant
    std::optional<SturmSequence> sturm;

    explicit RootLocator(const FlagComplex& x)
    {
        const RatPoly p = squarefree_part(to_rational(reflect(h_polynomial(x))));
        trivial = p.size() <= 1;
        if (!trivial)
            sturm.emplace(p);
    }
    int roots_in(const Rational& a, const Rational& b) const { return trivial ? 0 : sturm->roots_in(a, b); }
};

}  // namespace

ConvergenceReport convergence_check(const FlagComplex& x, const std::vector<std::int64_t>& q)
{
    check_orders(x, q);
    ConvergenceReport r;
    Rational sum = 0;
    std::int64_t qmin = 0;
    bool first = true;
    for (auto i = x.vertex_set().find_first(); i != VertexSet::npos; i = x.vertex_set().find_next(i)) {
        sum += inverse(q[i] + 1);
        if (first || q[i] < qmin)
            qmin = q[i];
        first = false;
    }
    r.sufficient_pass = sum < 1;

    const RootLocator roots(x);
    const Rational zero = 0, one = 1;
    if (roots.roots_in(zero, one) == 0) {
        r.rho_no_root = true;
        r.rho_lo = r.rho_hi = 1;
    } else {
        Rational lo = 0, hi = 1;
        const Rational width = inverse(std::int64_t{1} << 30);
        while (hi - lo > width) {
            Rational mid = (lo + hi) / 2;
            if (roots.roots_in(zero, mid) > 0)
                hi = mid;
            else
                lo = mid;
        }
        r.rho_lo = lo;
        r.rho_hi = hi;
    }

    // W has nonnegative coefficients, so W(1/q) is dominated by the univariate
    // series at 1/q_min, which converges iff 1/q_min < rho.
    bool dominated = true;
    if (!first)
        dominated = roots.roots_in(zero, inverse(qmin)) == 0;
    bool constant = true;
    for (auto i = x.vertex_set().find_first(); i != VertexSet::npos; i = x.vertex_set().find_next(i))
        constant = constant && q[i] == qmin;
    if (constant)
        r.in_region_univariate = dominated;
    r.region_ok = r.sufficient_pass || x.is_simplex() || dominated;
    return r;
}

namespace {

Rational d_sigma_unchecked(const FlagComplex& x, const Simplex& sigma, const std::vector<std::int64_t>& q)
{
    const FlagComplex lk = link(x, sigma);
    std::vector<Rational> t(q.size());
    for (std::size_t v = 0; v < q.size(); ++v)
        t[v] = inverse(q[v]);
    Rational out = growth_series_inverse(lk, as_evaluation(t));
    for (Vertex v : sigma)
        out /= 1 + q[static_cast<std::size_t>(v)];
    out.canonicalize();
    return out;
}

void require_region(const FlagComplex& x, const std::vector<std::int64_t>& q)
{
    if (!convergence_check(x, q).region_ok)
        throw ConvergenceError("1/q is not certified to lie in the region of convergence of the growth series");
}

}  // namespace

Rational d_sigma(const FlagComplex& x, const Simplex& sigma, const std::vector<std::int64_t>& q)
{
    check_orders(x, q);
    if (!x.contains(sigma))
        throw InvalidInput("d_sigma: " + sigma.str() + " is not a simplex");
    require_region(x, q);
    return d_sigma_unchecked(x, sigma, q);
}

Rational d_sigma_coface_sum(const FlagComplex& x, const Simplex& sigma, const std::vector<std::int64_t>& q)
{
    check_orders(x, q);
    if (!x.contains(sigma))
        throw InvalidInput("d_sigma_coface_sum: " + sigma.str() + " is not a simplex");
    Rational sum = 0;
    x.for_each([&](const Simplex& tau) {
        if (!std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end()))
            return;
        Rational term = 1;
        for (Vertex v : tau) {
            const Rational qv = static_cast<long>(q[static_cast<std::size_t>(v)]);
            term *= qv / (qv + 1);
        }
        if ((tau.dim() - sigma.dim()) % 2)
            sum -= term;
        else
            sum += term;
    });
    return sum;
}

std::vector<Rational> l2_betti_finite(const FlagComplex& x, const std::vector<std::int64_t>& q,
                                      const PuncturedProfile& pp)
{
    check_orders(x, q);
    require_region(x, q);
    std::vector<Rational> out(static_cast<std::size_t>(std::max(x.dim(), -1) + 2), Rational(0));
    x.for_each([&](const Simplex& s) {
        const BettiProfile& bp = pp.at(s);
        bool any = false;
        for (int i = -1; i <= bp.dim; ++i)
            any = any || bp.betti(i) != 0;
        if (!any)
            return;
        const Rational d = d_sigma_unchecked(x, s, q);
        for (int i = -1; i <= bp.dim; ++i)
            if (bp.betti(i) != 0)
                out[static_cast<std::size_t>(i + 1)] += static_cast<long>(bp.betti(i)) * d;
    });
    for (auto& v : out)
        v.canonicalize();
    return out;
}

// --------------------------------------------------- infinite vertex groups

std::vector<Rational> l2_betti_infinite(const FlagComplex& x, const GroupAssignment& a, const LinkProfile& lp)
{
    check_size(x, static_cast<std::size_t>(a.size()), "assignment");
    if (!a.all_infinite() && x.vertex_set().any())
        throw InvalidInput("l2_betti_infinite needs infinite vertex groups");
    std::map<int, Rational> acc;
    x.for_each([&](const Simplex& s) {
        std::vector<Rational> prod{Rational(1)};
        for (Vertex v : s)
            prod = graded_product(prod, a.infinite_at(v).l2_betti);
        if (std::all_of(prod.begin(), prod.end(), [](const Rational& r) { return r == 0; }))
            return;
        const BettiProfile& bp = lp.at(s);
        for (int j = -1; j <= bp.dim; ++j) {
            if (bp.betti(j) == 0)
                continue;
            for (std::size_t m = 0; m < prod.size(); ++m)
                if (prod[m] != 0)
                    acc[j + 1 + static_cast<int>(m)] += static_cast<long>(bp.betti(j)) * prod[m];
        }
    });
    int top = std::max(x.dim(), -1) + 1;
    if (!acc.empty())
        top = std::max(top, acc.rbegin()->first);
    std::vector<Rational> out(static_cast<std::size_t>(top + 1), Rational(0));
    for (auto& [deg, val] : acc) {
        val.canonicalize();
        out[static_cast<std::size_t>(deg)] = val;
    }
    return out;
}

SupportReport groupring_support_infinite(const FlagComplex& x, const GroupAssignment& a, const LinkProfile& lp)
{
    check_size(x, static_cast<std::size_t>(a.size()), "assignment");
    if (!a.all_infinite() && x.vertex_set().any())
        throw InvalidInput("groupring_support_infinite needs infinite vertex groups");
    SupportReport r;
    const bool raag = a.is_raag();
    r.exact = raag;
    int lowest = -1;
    x.for_each([&](const Simplex& s) {
        const BettiProfile& bp = lp.at(s);
        int shift = 0;
        for (Vertex v : s)
            shift += raag ? 1 : a.infinite_at(v).groupring_support_min;
        for (int j = -1; j <= bp.dim; ++j) {
            if (bp.betti(j) == 0)
                continue;
            const int degree = j + 1 + shift;
            if (raag)
                record_witness(r, s, degree);
            else {
                // only the lowest contribution of each simplex is certified
                record_witness(r, s, degree);
                lowest = lowest < 0 ? degree : std::min(lowest, degree);
                break;
            }
        }
    });
    finish_duality(r);
    if (!raag && lowest >= 0)
        r.vanishing_below = lowest;

    const int nverts = static_cast<int>(x.vertex_set().count());
    if (r.support.count(0)) {
        r.ends = Ends::zero;
    } else if (raag) {
        if (!r.support.count(1))
            r.ends = Ends::one;
        else
            r.ends = nverts == 1 ? Ends::two : Ends::infinite;
    } else if (r.vanishing_below > 1) {
        r.ends = Ends::one;
    }

    int max_cd = 0;
    for (auto i = x.vertex_set().find_first(); i != VertexSet::npos; i = x.vertex_set().find_next(i))
        max_cd = std::max(max_cd, a.infinite_at(static_cast<Vertex>(i)).cd);
    r.cd_bound = (x.dim() + 1) * max_cd;
    r.cd_bound_is_equality = a.is_constant();
    return r;
}

}  // namespace flagprod
