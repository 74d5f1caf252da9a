#include "flagprod/flag_complex.hpp"

#include "flagprod/errors.hpp"
#include "flagprod/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace flagprod {

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::initializer_list<Vertex> vs) : Simplex(std::vector<Vertex>(vs)) {}

Simplex::Simplex(std::vector<Vertex> vs) : v_(std::move(vs))
{
    for (std::size_t i = 1; i < v_.size(); ++i)
        if (v_[i - 1] >= v_[i])
            throw InvalidInput("simplex vertices must be strictly increasing");
    if (!v_.empty() && v_.front() < 0)
        throw InvalidInput("negative vertex label");
}

bool Simplex::contains(Vertex v) const { return std::binary_search(v_.begin(), v_.end(), v); }

Simplex Simplex::without(std::size_t i) const
{
    Simplex s;
    s.v_.reserve(v_.size() - 1);
    for (std::size_t j = 0; j < v_.size(); ++j)
        if (j != i)
            s.v_.push_back(v_[j]);
    return s;
}

VertexSet Simplex::as_set(int universe) const
{
    VertexSet s(universe);
    for (Vertex v : v_)
        s.set(v);
    return s;
}

std::string Simplex::str() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(v_[i]);
    }
    return out + "}";
}

// ------------------------------------------------------------ FlagComplex

std::span<const Simplex> FlagComplex::faces(int d) const
{
    const auto k = static_cast<std::size_t>(d + 1);
    if (d < -1 || k >= faces_.size())
        return {};
    return faces_[k];
}

std::size_t FlagComplex::face_count() const
{
    std::size_t c = 0;
    for (const auto& level : faces_)
        c += level.size();
    return c;
}

std::vector<std::uint64_t> FlagComplex::f_vector() const
{
    std::vector<std::uint64_t> f;
    for (const auto& level : faces_)
        f.push_back(level.size());
    return f;
}

std::optional<std::size_t> FlagComplex::index_of(const Simplex& s) const
{
    if (s.size() >= faces_.size())
        return std::nullopt;
    const auto& level = faces_[s.size()];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s)
        return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
}

VertexSet FlagComplex::common_neighbors(const Simplex& s) const
{
    VertexSet cn = vertices_;
    for (Vertex v : s)
        cn &= skeleton_.neighbors(v);
    for (Vertex v : s)
        cn.reset(v);
    return cn;
}

bool FlagComplex::is_simplex() const
{
    // A flag complex is a simplex iff its vertex set is a clique.
    const auto n = vertices_.count();
    return faces_.size() == n + 1 && (n == 0 || faces_[n].size() == 1);
}

std::vector<Simplex> FlagComplex::maximal_simplices() const
{
    std::vector<Simplex> out;
    for_each([&](const Simplex& s) {
        const bool at_cap = cap_ && s.dim() >= *cap_;
        if (at_cap || common_neighbors(s).none())
            out.push_back(s);
    });
    return out;
}

namespace {

struct Enumerator
{
    const Graph& g;
    std::optional<int> cap;
    std::size_t budget;
    std::size_t produced = 0;
    std::vector<std::vector<Simplex>>& faces;
    std::vector<Vertex> current;

    void record()
    {
        if (++produced > budget)
            throw ResourceError("flag complex exceeds the simplex budget of " + std::to_string(budget));
        if (faces.size() <= current.size())
            faces.resize(current.size() + 1);
        faces[current.size()].push_back(Simplex(current));
    }

    // Extends `current` by candidates above `after`, each clique produced once.
    void extend(const VertexSet& candidates)
    {
        if (cap && static_cast<int>(current.size()) >= *cap + 1)
            return;
        for (auto v = candidates.find_first(); v != VertexSet::npos; v = candidates.find_next(v)) {
            current.push_back(static_cast<Vertex>(v));
            record();
            VertexSet next = candidates & g.neighbors(static_cast<Vertex>(v));
            // keep only vertices above v
            for (auto w = next.find_first(); w != VertexSet::npos && w <= v; w = next.find_next(w))
                next.reset(w);
            if (next.any())
                extend(next);
            current.pop_back();
        }
    }
};

}  // namespace

FlagComplex build_flag_complex(const Graph& g, const VertexSet& vertices, std::size_t budget)
{
    FlagComplex k;
    k.skeleton_ = g.restricted_to(vertices);
    k.vertices_ = vertices;
    k.faces_.resize(1);
    k.faces_[0].push_back(Simplex{});
    Enumerator e{k.skeleton_, std::nullopt, budget, 1, k.faces_, {}};
    e.extend(vertices);
    return k;
}

FlagComplex build_flag_complex(const Graph& g, std::optional<int> dim_cap, std::size_t budget)
{
    if (dim_cap && *dim_cap < -1)
        throw InvalidInput("dimension cap must be at least -1");
    FlagComplex k;
    k.skeleton_ = g;
    k.vertices_ = full_vertex_set(g.vertex_count());
    k.cap_ = dim_cap;
    k.faces_.resize(1);
    k.faces_[0].push_back(Simplex{});
    Enumerator e{k.skeleton_, dim_cap, budget, 1, k.faces_, {}};
    e.extend(k.vertices_);
    return k;
}

// Simplices of k lying inside `keep`; for links, `sigma` bounds the size
// when k is a truncated skeleton.
FlagComplex restrict_complex(const FlagComplex& k, const VertexSet& keep, const Simplex* sigma)
{
    FlagComplex out;
    out.skeleton_ = k.skeleton_.restricted_to(keep);
    out.vertices_ = keep;
    if (k.cap_)
        out.cap_ = sigma ? *k.cap_ - static_cast<int>(sigma->size()) : *k.cap_;
    std::size_t max_size = k.faces_.size();
    if (out.cap_)
        max_size = std::min<std::size_t>(max_size, static_cast<std::size_t>(std::max(*out.cap_ + 2, 1)));
    out.faces_.resize(1);
    out.faces_[0].push_back(Simplex{});
    for (std::size_t sz = 1; sz < max_size; ++sz) {
        std::vector<Simplex> level;
        for (const auto& s : k.faces_[sz])
            if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return keep.test(v); }))
                level.push_back(s);
        if (level.empty())
            break;
        out.faces_.push_back(std::move(level));
    }
    return out;
}

FlagComplex link(const FlagComplex& k, const Simplex& sigma)
{
    if (!k.contains(sigma))
        throw InvalidInput("link: " + sigma.str() + " is not a simplex of the complex");
    return restrict_complex(k, k.common_neighbors(sigma), &sigma);
}

FlagComplex deleted(const FlagComplex& k, const Simplex& sigma)
{
    if (!k.contains(sigma))
        throw InvalidInput("deleted: " + sigma.str() + " is not a simplex of the complex");
    VertexSet keep = k.vertex_set();
    for (Vertex v : sigma)
        keep.reset(v);
    return restrict_complex(k, keep, nullptr);
}

FlagComplex induced(const FlagComplex& k, const VertexSet& vertices)
{
    if (static_cast<int>(vertices.size()) != k.ground_size())
        throw InvalidInput("induced: vertex set has the wrong universe size");
    if (!vertices.is_subset_of(k.vertex_set()))
        throw InvalidInput("induced: vertex set is not contained in the complex");
    return restrict_complex(k, vertices, nullptr);
}

FlagComplex subcomplex(const FlagComplex& k, const SubcomplexMode& mode)
{
    struct Visitor
    {
        const FlagComplex& k;
        FlagComplex operator()(const LinkOf& m) const { return link(k, m.sigma); }
        FlagComplex operator()(const DeletedOf& m) const { return deleted(k, m.sigma); }
        FlagComplex operator()(const InducedOn& m) const { return induced(k, m.vertices); }
    };
    return std::visit(Visitor{k}, mode);
}

FlagComplex join_of_finite_sets(const std::vector<int>& sizes)
{
    if (sizes.empty())
        throw InvalidInput("join of finite sets needs at least one set");
    std::vector<int> cls;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (sizes[c] < 1)
            throw InvalidInput("join of finite sets: every set must be nonempty");
        cls.insert(cls.end(), sizes[c], static_cast<int>(c));
    }
    const int n = static_cast<int>(cls.size());
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (cls[u] != cls[v])
                e.emplace_back(u, v);
    return build_flag_complex(graph_from_edges(n, e));
}

// ------------------------------------------------------ face polynomials

namespace {

const Rational& value_at(const Evaluation& t, Vertex v)
{
    if (const auto* c = std::get_if<Rational>(&t))
        return *c;
    return std::get<std::vector<Rational>>(t)[static_cast<std::size_t>(v)];
}

void check_evaluation(const FlagComplex& k, const Evaluation& t)
{
    if (const auto* vec = std::get_if<std::vector<Rational>>(&t))
        if (static_cast<int>(vec->size()) != k.ground_size())
            throw InvalidInput("per-vertex evaluation needs one value for each of the " +
                               std::to_string(k.ground_size()) + " ground-set vertices");
}

Rational evaluate_f(const FlagComplex& k, const Evaluation& t)
{
    Rational sum = 0;
    k.for_each([&](const Simplex& s) {
        Rational term = 1;
        for (Vertex v : s)
            term *= value_at(t, v);
        sum += term;
    });
    return sum;
}

}  // namespace

Rational f_polynomial(const FlagComplex& k, const Evaluation& t)
{
    check_evaluation(k, t);
    return evaluate_f(k, t);
}

std::vector<BigInt> h_polynomial(const FlagComplex& k)
{
    // h(t) = sum_i f_{i-1} t^i (1-t)^{d+1-i}
    const int top = k.dim() + 1;
    const auto f = k.f_vector();
    std::vector<BigInt> h(static_cast<std::size_t>(top + 1), 0);
    for (int i = 0; i <= top; ++i) {
        const BigInt fi = static_cast<unsigned long>(f[static_cast<std::size_t>(i)]);
        const int m = top - i;
        for (int j = 0; j <= m; ++j) {
            BigInt c = binomial(m, j) * fi;
            if (j % 2)
                h[static_cast<std::size_t>(i + j)] -= c;
            else
                h[static_cast<std::size_t>(i + j)] += c;
        }
    }
    return h;
}

FacePolynomialValues face_polynomials(const FlagComplex& k, const Evaluation& t)
{
    check_evaluation(k, t);
    FacePolynomialValues out;
    out.f_value = evaluate_f(k, t);

    const int n = k.ground_size();
    std::vector<Rational> sub(static_cast<std::size_t>(n));
    Rational scale = 1;
    for (Vertex v = 0; v < n; ++v) {
        const Rational& tv = value_at(t, v);
        if (tv == 1)
            throw PoleError("hhat: t_" + std::to_string(v) + " = 1 is a pole of t/(1-t)");
        sub[static_cast<std::size_t>(v)] = tv / (1 - tv);
        scale *= 1 - tv;
    }
    out.hhat_value = scale * evaluate_f(k, Evaluation(std::move(sub)));
    if (std::holds_alternative<Rational>(t))
        out.h_coeffs = h_polynomial(k);
    return out;
}

double expected_face_count(int n, double p, int i)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidInput("edge probability must lie in [0,1]");
    if (i < 1 || i > n)
        throw InvalidInput("vertex count i must satisfy 1 <= i <= n");
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
    const double pairs = 0.5 * i * (i - 1.0);
    if (pairs == 0)
        return std::exp(log_binom);
    if (p == 0)
        return 0.0;
    return std::exp(log_binom + pairs * std::log(p));
}

std::string to_json(const FlagComplex& k)
{
    nlohmann::json j;
    j["n"] = k.ground_size();
    j["dim"] = k.dim();
    j["f_vector"] = k.f_vector();
    auto& maximal = j["maximal"] = nlohmann::json::array();
    for (const auto& s : k.maximal_simplices())
        maximal.push_back(std::vector<Vertex>(s.begin(), s.end()));
    return j.dump();
}

}  // namespace flagprod
