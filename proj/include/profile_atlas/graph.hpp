#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "profile_atlas/rational.hpp"

namespace patlas {

/// Labeled simple graph on up to 64 vertices; one adjacency word per vertex.
struct Graph {
    static constexpr int max_vertices = 64;

    int n = 0;
    std::array<std::uint64_t, max_vertices> adj{};

    explicit Graph(int n_ = 0) : n(n_) {
        if (n_ < 0 || n_ > max_vertices)
            throw std::invalid_argument("Graph: vertex count out of range 0..64");
    }

    bool has_edge(int u, int v) const { return (adj[u] >> v) & 1u; }

    void add_edge(int u, int v) {
        adj[u] |= std::uint64_t{1} << v;
        adj[v] |= std::uint64_t{1} << u;
    }

    int degree(int v) const { return std::popcount(adj[v]); }

    long long edge_count() const {
        long long d = 0;
        for (int v = 0; v < n; ++v) d += degree(v);
        return d / 2;
    }

    bool operator==(const Graph& o) const {
        if (n != o.n) return false;
        return std::equal(adj.begin(), adj.begin() + n, o.adj.begin());
    }
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Edge-list format: header "n m", then m lines "u v" with 0 <= u < v < n.
inline Graph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError(1, "empty input, expected header \"n m\"");
    long long n = -1, m = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra))
            throw ParseError(lineno, "malformed header, expected \"n m\"");
    }
    if (n < 1 || n > Graph::max_vertices)
        throw ParseError(lineno, "vertex count must be in 1..64, got " + std::to_string(n));
    if (m < 0 || m > n * (n - 1) / 2)
        throw ParseError(lineno, "edge count out of range");

    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!next_line()) throw ParseError(lineno + 1, "unexpected end of input, expected edge");
        std::istringstream es(line);
        long long u, v;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw ParseError(lineno, "malformed edge line, expected \"u v\"");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "vertex index out of range 0.." + std::to_string(n - 1));
        if (u == v) throw ParseError(lineno, "loop at vertex " + std::to_string(u));
        if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
            throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    return g;
}

/// graph6 reader for n <= 62 (single-byte order); accepts the ">>graph6<<" prefix.
inline Graph parse_graph6(std::string_view text) {
    std::string_view s = text;
    constexpr std::string_view prefix = ">>graph6<<";
    if (s.substr(0, prefix.size()) == prefix) s.remove_prefix(prefix.size());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    if (s.empty()) throw ParseError(1, "empty graph6 input");
    int n = s[0] - 63;
    if (n < 1 || n > 62) throw ParseError(1, "graph6: unsupported vertex count");
    Graph g(n);
    int bit = 0;
    auto get_bit = [&](int idx) -> int {
        int byte = 1 + idx / 6;
        if (byte >= static_cast<int>(s.size())) throw ParseError(1, "graph6: input too short");
        int c = s[byte] - 63;
        if (c < 0 || c > 63) throw ParseError(1, "graph6: invalid character");
        return (c >> (5 - idx % 6)) & 1;
    };
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++bit)
            if (get_bit(bit)) g.add_edge(u, v);
    return g;
}

inline Graph complement(const Graph& g) {
    Graph c(g.n);
    const std::uint64_t full = (g.n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n) - 1);
    for (int v = 0; v < g.n; ++v)
        c.adj[v] = full & ~g.adj[v] & ~(std::uint64_t{1} << v);
    return c;
}

// Colex bit index for the edge {u,v}, u < v: v(v-1)/2 + u. This ordering is
// shared with the census enumeration so canonical masks agree everywhere.
inline int edge_bit(int u, int v) {
    if (u > v) std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

inline std::uint64_t edge_mask(const Graph& g) {
    std::uint64_t mask = 0;
    for (int v = 1; v < g.n; ++v)
        for (int u = 0; u < v; ++u)
            if (g.has_edge(u, v)) mask |= std::uint64_t{1} << edge_bit(u, v);
    return mask;
}

inline Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if ((mask >> edge_bit(u, v)) & 1u) g.add_edge(u, v);
    return g;
}

struct CanonicalForm {
    int n = 0;
    std::uint64_t bits = 0;
    auto operator<=>(const CanonicalForm&) const = default;
};

/// Minimum edge mask over all vertex permutations. Exhaustive; n <= 10.
inline CanonicalForm canonical_form(const Graph& g) {
    if (g.n > 10) throw std::invalid_argument("canonical_form: supported only for n <= 10");
    std::array<int, 10> perm{};
    std::iota(perm.begin(), perm.begin() + g.n, 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t mask = 0;
        for (int v = 1; v < g.n; ++v)
            for (int u = 0; u < v; ++u)
                if (g.has_edge(u, v)) mask |= std::uint64_t{1} << edge_bit(perm[u], perm[v]);
        best = std::min(best, mask);
    } while (std::next_permutation(perm.begin(), perm.begin() + g.n));
    return {g.n, best};
}

inline Graph induced_subgraph(const Graph& g, std::span<const int> verts) {
    Graph h(static_cast<int>(verts.size()));
    for (int i = 0; i < h.n; ++i)
        for (int j = i + 1; j < h.n; ++j)
            if (g.has_edge(verts[i], verts[j])) h.add_edge(i, j);
    return h;
}

namespace detail {

// Visit all k-subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        fn(std::span<const int>(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// d(H;G): probability that a uniform |H|-subset of V(G) induces H.
inline Density induced_density(const Graph& h, const Graph& g) {
    if (h.n > g.n) throw std::invalid_argument("induced_density: |H| > |G|");
    const CanonicalForm target = canonical_form(h);
    long long hits = 0;
    detail::for_each_subset(g.n, h.n, [&](std::span<const int> verts) {
        if (canonical_form(induced_subgraph(g, verts)) == target) ++hits;
    });
    return Density(hits) / Density(binomial(g.n, h.n));
}

/// Exact distribution of edge counts over vertex triples.
struct Profile3 {
    Rat p0, p1, p2, p3;

    Rat sum() const { return p0 + p1 + p2 + p3; }
    Profile3 reversed() const { return {p3, p2, p1, p0}; }
    bool operator==(const Profile3&) const = default;
};

inline Profile3 profile3_from_counts(long long n, long long c0, long long c1, long long c2,
                                     long long c3) {
    const Int total = binomial(n, 3);
    return {Rat(c0) / Rat(total), Rat(c1) / Rat(total), Rat(c2) / Rat(total), Rat(c3) / Rat(total)};
}

inline Profile3 profile3(const Graph& g) {
    if (g.n < 3) throw std::invalid_argument("profile3: need at least 3 vertices");
    long long counts[4] = {0, 0, 0, 0};
    for (int w = 2; w < g.n; ++w)
        for (int v = 1; v < w; ++v)
            for (int u = 0; u < v; ++u) {
                int e = g.has_edge(u, v) + g.has_edge(u, w) + g.has_edge(v, w);
                ++counts[e];
            }
    return profile3_from_counts(g.n, counts[0], counts[1], counts[2], counts[3]);
}

/// Adjacency bitset for graphs beyond 64 vertices; used by the samplers.
/// Triples are counted through triangle/cherry identities, not enumeration.
class BitGraph {
public:
    explicit BitGraph(int n) : n_(n), words_((n + 63) / 64), bits_(std::size_t(n) * words_) {
        if (n < 1) throw std::invalid_argument("BitGraph: need at least one vertex");
    }

    int order() const { return n_; }

    bool has_edge(int u, int v) const {
        return (row(u)[v / 64] >> (v % 64)) & 1u;
    }

    void add_edge(int u, int v) {
        row(u)[v / 64] |= std::uint64_t{1} << (v % 64);
        row(v)[u / 64] |= std::uint64_t{1} << (u % 64);
    }

    long long degree(int v) const {
        long long d = 0;
        for (int w = 0; w < words_; ++w) d += std::popcount(row(v)[w]);
        return d;
    }

    long long edge_count() const {
        long long d = 0;
        for (int v = 0; v < n_; ++v) d += degree(v);
        return d / 2;
    }

    long long triangle_count() const {
        // Each triangle is seen once per edge, from the smaller endpoint side.
        long long sum = 0;
        for (int u = 0; u < n_; ++u) {
            const std::uint64_t* ru = row(u);
            for (int w = 0; w < words_; ++w) {
                std::uint64_t bits = ru[w];
                while (bits) {
                    int v = w * 64 + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (v <= u) continue;
                    const std::uint64_t* rv = row(v);
                    for (int q = 0; q < words_; ++q) sum += std::popcount(ru[q] & rv[q]);
                }
            }
        }
        return sum / 3;
    }

    // Triple counts via m, triangles t and cherries w:
    //   #2-edge = sum_v C(deg v,2) - 3t,  #1-edge = m(n-2) - 2w - 3t.
    Profile3 profile3() const {
        if (n_ < 3) throw std::invalid_argument("profile3: need at least 3 vertices");
        const long long n = n_;
        const long long m = edge_count();
        const long long t = triangle_count();
        long long cherries = 0;
        for (int v = 0; v < n_; ++v) {
            long long d = degree(v);
            cherries += d * (d - 1) / 2;
        }
        const long long c2 = cherries - 3 * t;
        const long long c1 = m * (n - 2) - 2 * c2 - 3 * t;
        const long long total = n * (n - 1) * (n - 2) / 6;
        return profile3_from_counts(n, total - c1 - c2 - t, c1, c2, t);
    }

private:
    const std::uint64_t* row(int v) const { return bits_.data() + std::size_t(v) * words_; }
    std::uint64_t* row(int v) { return bits_.data() + std::size_t(v) * words_; }

    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace patlas
