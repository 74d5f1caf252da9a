#include "flagprod/graph.hpp"

#include "flagprod/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace flagprod {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0)), VertexSet(std::max(n, 0)))
{
    if (n < 0)
        throw InvalidInput("vertex count must be nonnegative");
}

void Graph::add_edge(Vertex u, Vertex v)
{
    if (!adj_[u].test(v)) {
        adj_[u].set(v);
        adj_[v].set(u);
        ++edge_count_;
    }
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
        for (auto v = adj_[u].find_next(u); v != VertexSet::npos; v = adj_[u].find_next(v))
            out.emplace_back(u, static_cast<Vertex>(v));
    return out;
}

Graph Graph::restricted_to(const VertexSet& keep) const
{
    Graph g(n_);
    for (Vertex u = 0; u < n_; ++u) {
        if (!keep.test(u))
            continue;
        g.adj_[u] = adj_[u] & keep;
        g.edge_count_ += g.adj_[u].count();
    }
    g.edge_count_ /= 2;
    return g;
}

std::string Graph::digest() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(n_));
    for (auto [u, v] : edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Graph graph_from_edges(int n, const std::vector<Edge>& edges)
{
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InvalidInput("edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v)
            throw InvalidInput("self-loop at vertex " + std::to_string(u));
        g.add_edge(u, v);
    }
    return g;
}

Graph sample_gnp(int n, double p, RngSeed rng)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidInput("edge probability must lie in [0,1]");
    Graph g(n);
    auto eng = make_engine(rng);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (uniform01(eng) < p)
                g.add_edge(u, v);
    return g;
}

Graph complete_graph(int n)
{
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            e.emplace_back(u, v);
    return graph_from_edges(n, e);
}

VertexSet full_vertex_set(int n)
{
    VertexSet s(n);
    s.set();
    return s;
}

bool is_connected(const Graph& g)
{
    const int n = g.vertex_count();
    if (n == 0)
        return false;
    VertexSet seen(n);
    std::queue<Vertex> q;
    q.push(0);
    seen.set(0);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        const VertexSet fresh = g.neighbors(u) - seen;
        for (auto v = fresh.find_first(); v != VertexSet::npos; v = fresh.find_next(v)) {
            seen.set(v);
            q.push(static_cast<Vertex>(v));
        }
    }
    return seen.all();
}

SpectralReport spectral_report(const Graph& g, const VertexSet& vertices)
{
    std::vector<Vertex> label;
    for (auto v = vertices.find_first(); v != VertexSet::npos; v = vertices.find_next(v))
        label.push_back(static_cast<Vertex>(v));
    const int m = static_cast<int>(label.size());
    if (m == 0)
        throw InvalidInput("spectral report of an empty graph");

    std::vector<int> deg(m);
    for (int i = 0; i < m; ++i) {
        deg[i] = static_cast<int>((g.neighbors(label[i]) & vertices).count());
        if (deg[i] == 0)
            throw DegenerateDegree("vertex " + std::to_string(label[i]) + " is isolated");
    }

    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (g.adjacent(label[i], label[j])) {
                const double w = -1.0 / std::sqrt(static_cast<double>(deg[i]) * deg[j]);
                lap(i, j) = w;
                lap(j, i) = w;
            }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();

    SpectralReport r;
    r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
    r.min_degree = *std::min_element(deg.begin(), deg.end());
    const auto zeros = std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(),
                                     [](double x) { return std::abs(x) < kZeroEigenvalueTolerance; });
    r.connected = zeros == 1;
    r.lambda2 = m >= 2 ? r.eigenvalues[1] : 0.0;
    return r;
}

SpectralReport spectral_report(const Graph& g)
{
    return spectral_report(g, full_vertex_set(g.vertex_count()));
}

Graph read_graph(std::istream& in)
{
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out))
            if (out.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        return false;
    };
    if (!next_line(line))
        throw InvalidInput("graph file: missing header line");
    long long n = -1, m = -1;
    {
        std::istringstream hs(line);
        if (!(hs >> n >> m) || n < 0 || m < 0)
            throw InvalidInput("graph file: header must be \"n m\"");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_line(line))
            throw InvalidInput("graph file: expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        std::istringstream es(line);
        long long u, v;
        if (!(es >> u >> v))
            throw InvalidInput("graph file: malformed edge line \"" + line + "\"");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return graph_from_edges(static_cast<int>(n), edges);
}

void write_graph(std::ostream& out, const Graph& g)
{
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

}  // namespace flagprod
