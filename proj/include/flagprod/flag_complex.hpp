#pragma once

#include "flagprod/graph.hpp"
#include "flagprod/rational.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace flagprod {

/// A simplex, identified with its strictly increasing vertex list. The empty
/// list is the empty simplex, of dimension -1.
class Simplex
{
public:
    Simplex() = default;
    Simplex(std::initializer_list<Vertex> vs);
    explicit Simplex(std::vector<Vertex> vs);

    int dim() const { return static_cast<int>(v_.size()) - 1; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    std::span<const Vertex> vertices() const { return v_; }
    Vertex operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    bool contains(Vertex v) const;
    /// Face obtained by deleting the i-th vertex.
    Simplex without(std::size_t i) const;
    VertexSet as_set(int universe) const;

    std::string str() const;

    friend auto operator<=>(const Simplex&, const Simplex&) = default;
    friend bool operator==(const Simplex&, const Simplex&) = default;

private:
    std::vector<Vertex> v_;
};

inline constexpr std::size_t kDefaultSimplexBudget = 10'000'000;

/// The flag complex of a graph, restricted to a vertex subset, with every
/// simplex (including the empty one) stored explicitly. Simplices are grouped
/// by dimension and sorted lexicographically inside each dimension.
class FlagComplex
{
public:
    /// Ground-set size n: vertex labels live in [0, n).
    int ground_size() const { return skeleton_.vertex_count(); }
    const VertexSet& vertex_set() const { return vertices_; }
    /// 1-skeleton, with edges only among vertex_set().
    const Graph& skeleton() const { return skeleton_; }

    /// -1 for the empty complex.
    int dim() const { return static_cast<int>(faces_.size()) - 2; }
    bool truncated() const { return cap_.has_value(); }
    std::optional<int> dim_cap() const { return cap_; }

    /// Simplices of dimension `d` (d >= -1); empty span past the top.
    std::span<const Simplex> faces(int d) const;
    std::size_t face_count() const;

    /// f_{-1}, f_0, ..., f_dim.
    std::vector<std::uint64_t> f_vector() const;

    /// Position of `s` within faces(s.dim()), if present.
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Vertices adjacent to every vertex of `s`, excluding `s` itself
    /// (all vertices for the empty simplex).
    VertexSet common_neighbors(const Simplex& s) const;

    bool is_simplex() const;

    std::vector<Simplex> maximal_simplices() const;

    /// Calls f(simplex) for every simplex in order: by dimension, then lex.
    template <class F>
    void for_each(F&& f) const
    {
        for (const auto& level : faces_)
            for (const auto& s : level)
                f(s);
    }

private:
    friend FlagComplex build_flag_complex(const Graph&, std::optional<int>, std::size_t);
    friend FlagComplex build_flag_complex(const Graph&, const VertexSet&, std::size_t);
    friend FlagComplex restrict_complex(const FlagComplex&, const VertexSet&, const Simplex*);

    Graph skeleton_;
    VertexSet vertices_;
    std::optional<int> cap_;
    std::vector<std::vector<Simplex>> faces_;  // faces_[k] = simplices with k vertices
};

/// All cliques of `g` (of at most dim_cap+1 vertices if a cap is given),
/// enumerated by ordered extension. Throws ResourceError past `budget`
/// simplices.
FlagComplex build_flag_complex(const Graph& g, std::optional<int> dim_cap = std::nullopt,
                               std::size_t budget = kDefaultSimplexBudget);

/// Flag complex of the subgraph induced on `vertices`.
FlagComplex build_flag_complex(const Graph& g, const VertexSet& vertices,
                               std::size_t budget = kDefaultSimplexBudget);

struct LinkOf { Simplex sigma; };
struct DeletedOf { Simplex sigma; };
struct InducedOn { VertexSet vertices; };
using SubcomplexMode = std::variant<LinkOf, DeletedOf, InducedOn>;

/// Link Lk(sigma), punctured complex X - sigma, or full subcomplex X(I).
/// Each result is again a flag complex on the same ground set. Throws
/// InvalidInput if sigma is not a simplex of k.
FlagComplex subcomplex(const FlagComplex& k, const SubcomplexMode& mode);
FlagComplex link(const FlagComplex& k, const Simplex& sigma);
FlagComplex deleted(const FlagComplex& k, const Simplex& sigma);
FlagComplex induced(const FlagComplex& k, const VertexSet& vertices);

/// Complete multipartite flag complex: the join of finite sets of the given
/// sizes. Vertices are numbered consecutively class by class.
FlagComplex join_of_finite_sets(const std::vector<int>& sizes);

/// Either one value for every vertex, or one value per ground-set vertex.
using Evaluation = std::variant<Rational, std::vector<Rational>>;

struct FacePolynomialValues
{
    Rational f_value;
    Rational hhat_value;
    /// h_0 .. h_{d+1}; set only for a univariate evaluation point.
    std::optional<std::vector<BigInt>> h_coeffs;
};

/// f_X(t) = sum over simplices of prod t_i;  hhat_X(t) = (1-t)_[n] f_X(t/(1-t)).
/// Throws PoleError when some t_i = 1.
FacePolynomialValues face_polynomials(const FlagComplex& k, const Evaluation& t);

/// f_X evaluated at t (exact), no pole restrictions.
Rational f_polynomial(const FlagComplex& k, const Evaluation& t);

/// Coefficients of the integer polynomial (1-t)^{d+1} f_X(t/(1-t)).
std::vector<BigInt> h_polynomial(const FlagComplex& k);

/// C(n,i) p^{C(i,2)}, the expected number of (i-1)-simplices of X(n,p).
double expected_face_count(int n, double p, int i);

/// {"n":..., "dim":..., "f_vector":[...], "maximal":[[...],...]}
std::string to_json(const FlagComplex& k);

}  // namespace flagprod
