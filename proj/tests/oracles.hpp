#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library beyond its basic Graph and Rational types.

#include "flagprod/graph.hpp"
#include "flagprod/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using flagprod::Graph;
using flagprod::Rational;
using Face = std::vector<int>;

/// Every clique of g (the empty one included), by size then lexicographically.
inline std::vector<Face> cliques_by_subsets(const Graph& g)
{
    const int n = g.vertex_count();
    std::vector<Face> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Face f;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1)
                f.push_back(v);
        bool clique = true;
        for (std::size_t i = 0; i < f.size() && clique; ++i)
            for (std::size_t j = i + 1; j < f.size() && clique; ++j)
                clique = g.adjacent(f[i], f[j]);
        if (clique)
            out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

/// Rank by plain Gauss-Jordan elimination over Q.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            const Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Reduced Betti numbers b_{-1}, b_0, ... of the complex with the given
/// faces (closed under subsets, empty face included).
inline std::vector<std::int64_t> reduced_betti(const std::vector<Face>& faces)
{
    std::map<std::size_t, std::vector<Face>> by_size;
    for (const auto& f : faces)
        by_size[f.size()].push_back(f);
    const std::size_t top = by_size.rbegin()->first;
    // rank of the boundary from size s to size s-1
    std::vector<std::size_t> rank(top + 2, 0);
    for (std::size_t s = 1; s <= top; ++s) {
        const auto& hi = by_size[s];
        const auto& lo = by_size[s - 1];
        std::map<Face, std::size_t> index;
        for (std::size_t i = 0; i < lo.size(); ++i)
            index[lo[i]] = i;
        std::vector<std::vector<Rational>> m(lo.size(), std::vector<Rational>(hi.size(), Rational(0)));
        for (std::size_t j = 0; j < hi.size(); ++j)
            for (std::size_t i = 0; i < hi[j].size(); ++i) {
                Face f = hi[j];
                f.erase(f.begin() + static_cast<long>(i));
                m[index.at(f)][j] = i % 2 ? -1 : 1;
            }
        rank[s] = rational_rank(std::move(m));
    }
    std::vector<std::int64_t> b;
    for (std::size_t s = 0; s <= top; ++s)
        b.push_back(static_cast<std::int64_t>(by_size[s].size()) - static_cast<std::int64_t>(rank[s]) -
                    static_cast<std::int64_t>(rank[s + 1]));
    return b;
}

/// Number of elements of each length 0..max_len in the right-angled Coxeter
/// group of g, by enumerating lexicographic normal forms of reduced words.
inline std::vector<std::uint64_t> racg_word_counts(const Graph& g, int max_len)
{
    using Word = std::vector<int>;
    auto commute = [&](int a, int b) { return a != b && g.adjacent(a, b); };
    // Lex-least word among those related by commuting adjacent letters.
    auto normal_form = [&](Word w) {
        Word out;
        while (!w.empty()) {
            std::size_t best = w.size();
            for (std::size_t i = 0; i < w.size(); ++i) {
                bool movable = true;
                for (std::size_t j = 0; j < i && movable; ++j)
                    movable = commute(w[j], w[i]);
                if (movable && (best == w.size() || w[i] < w[best]))
                    best = i;
            }
            out.push_back(w[best]);
            w.erase(w.begin() + static_cast<long>(best));
        }
        return out;
    };
    std::vector<std::uint64_t> counts{1};
    std::set<Word> level{Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::set<Word> next;
        for (const auto& w : level)
            for (int s = 0; s < g.vertex_count(); ++s) {
                // w s is reduced unless some s in w commutes past everything after it
                bool cancels = false;
                for (std::size_t i = w.size(); i-- > 0;) {
                    if (w[i] == s) {
                        cancels = true;
                        break;
                    }
                    if (!commute(w[i], s))
                        break;
                }
                if (cancels)
                    continue;
                Word ws = w;
                ws.push_back(s);
                next.insert(normal_form(std::move(ws)));
            }
        counts.push_back(next.size());
        level = std::move(next);
    }
    return counts;
}

}  // namespace oracle
