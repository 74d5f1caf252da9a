#pragma once

#include "flagprod/flag_complex.hpp"
#include "flagprod/graph.hpp"

#include <vector>

namespace fixtures {

using flagprod::Graph;

inline Graph octahedron()
{
    std::vector<flagprod::Edge> e;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            if (!(u % 2 == 0 && v == u + 1))
                e.emplace_back(u, v);
    return flagprod::graph_from_edges(6, e);
}

inline Graph cycle(int n)
{
    std::vector<flagprod::Edge> e;
    for (int v = 0; v < n; ++v)
        e.emplace_back(v, (v + 1) % n);
    return flagprod::graph_from_edges(n, e);
}

inline Graph c4() { return cycle(4); }
inline Graph two_points() { return flagprod::graph_from_edges(2, {}); }
inline Graph single_vertex() { return flagprod::graph_from_edges(1, {}); }
inline Graph single_edge() { return flagprod::graph_from_edges(2, {{0, 1}}); }
inline Graph path(int n)
{
    std::vector<flagprod::Edge> e;
    for (int v = 0; v + 1 < n; ++v)
        e.emplace_back(v, v + 1);
    return flagprod::graph_from_edges(n, e);
}

inline flagprod::FlagComplex complex_of(const Graph& g) { return flagprod::build_flag_complex(g); }

}  // namespace fixtures
