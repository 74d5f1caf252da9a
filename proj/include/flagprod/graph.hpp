#pragma once

#include "flagprod/rng.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace flagprod {

using Vertex = int;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with per-vertex adjacency
/// bitsets. Immutable once built.
class Graph
{
public:
    Graph() = default;
    explicit Graph(int n);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }

    bool adjacent(Vertex u, Vertex v) const { return adj_[u].test(v); }
    const VertexSet& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].count()); }

    /// Edges (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

    /// Subgraph with the same vertex labels, keeping only edges inside `keep`.
    Graph restricted_to(const VertexSet& keep) const;

    /// 64-bit FNV-1a hash of (n, sorted edge list), as 16 hex digits.
    std::string digest() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    friend Graph graph_from_edges(int n, const std::vector<Edge>& edges);
    friend Graph sample_gnp(int n, double p, RngSeed rng);
    void add_edge(Vertex u, Vertex v);

    int n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<VertexSet> adj_;
};

/// Throws InvalidInput on out-of-range endpoints or self-loops; duplicate
/// pairs (in either orientation) collapse to one edge.
Graph graph_from_edges(int n, const std::vector<Edge>& edges);

/// Binomial random graph G(n, p): each of the C(n,2) pairs is an edge
/// independently with probability p. Deterministic in `rng`.
Graph sample_gnp(int n, double p, RngSeed rng);

Graph complete_graph(int n);

VertexSet full_vertex_set(int n);

/// Breadth-first connectivity; the empty graph counts as disconnected.
bool is_connected(const Graph& g);

struct SpectralReport
{
    bool connected = false;
    double lambda2 = 0.0;
    int min_degree = 0;
    /// Eigenvalues of the normalized Laplacian, ascending.
    std::vector<double> eigenvalues;
};

/// Spectrum of the normalized Laplacian I - D^{-1}A, computed on the
/// symmetric form I - D^{-1/2} A D^{-1/2}. Throws DegenerateDegree if some
/// vertex is isolated and InvalidInput for the empty graph.
SpectralReport spectral_report(const Graph& g);

/// Same, for the subgraph induced on `vertices` (relabelled compactly).
SpectralReport spectral_report(const Graph& g, const VertexSet& vertices);

inline constexpr double kZeroEigenvalueTolerance = 1e-8;

// Text format: "n m" then m lines "u v", 0-based.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace flagprod
