#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "profile_atlas/graph.hpp"
#include "profile_atlas/linalg.hpp"
#include "profile_atlas/rational.hpp"

namespace patlas {

/// (s,k)-flagged graph: an s-vertex base with an ordered k-tuple of
/// distinguished vertices. Isomorphisms must carry the flag in order.
struct FlaggedGraph {
    Graph base;
    std::vector<int> flag;

    FlaggedGraph(Graph b, std::vector<int> f) : base(std::move(b)), flag(std::move(f)) {
        std::vector<int> seen;
        for (int v : flag) {
            if (v < 0 || v >= base.n) throw std::invalid_argument("FlaggedGraph: flag vertex out of range");
            if (std::find(seen.begin(), seen.end(), v) != seen.end())
                throw std::invalid_argument("FlaggedGraph: repeated flag vertex");
            seen.push_back(v);
        }
    }

    int order() const { return base.n; }
    int flag_size() const { return static_cast<int>(flag.size()); }
};

inline bool flag_isomorphic(const FlaggedGraph& f1, const FlaggedGraph& f2) {
    const int s = f1.order();
    if (s != f2.order() || f1.flag_size() != f2.flag_size()) return false;
    const int k = f1.flag_size();

    // phi is forced on the flag; permute the remaining vertices.
    std::vector<int> phi(s, -1);
    std::vector<bool> used(s, false);
    for (int i = 0; i < k; ++i) {
        phi[f1.flag[i]] = f2.flag[i];
        used[f2.flag[i]] = true;
    }
    std::vector<int> free1, free2;
    for (int v = 0; v < s; ++v)
        if (phi[v] < 0) free1.push_back(v);
    for (int v = 0; v < s; ++v)
        if (!used[v]) free2.push_back(v);

    std::sort(free2.begin(), free2.end());
    do {
        for (std::size_t i = 0; i < free1.size(); ++i) phi[free1[i]] = free2[i];
        bool ok = true;
        for (int u = 0; u < s && ok; ++u)
            for (int v = u + 1; v < s && ok; ++v)
                if (f1.base.has_edge(u, v) != f2.base.has_edge(phi[u], phi[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(free2.begin(), free2.end()));
    return false;
}

/// Induced flagged subgraph on verts(U) followed by the rest of V1 (sorted);
/// the flag keeps U's order at positions 0..k-1.
inline FlaggedGraph induced_flagged(const Graph& g, std::span<const int> ordered_u,
                                    std::span<const int> rest) {
    std::vector<int> verts(ordered_u.begin(), ordered_u.end());
    verts.insert(verts.end(), rest.begin(), rest.end());
    std::vector<int> flag(ordered_u.size());
    std::iota(flag.begin(), flag.end(), 0);
    return {induced_subgraph(g, verts), std::move(flag)};
}

using GraphPredicate = std::function<bool(const Graph&)>;

/// One representative per flag-isomorphism class of (s,k)-flagged graphs with
/// base in the family; ordered by (canonical base form, flagged canonical key).
inline std::vector<FlaggedGraph> enumerate_flags(int s, int k, const GraphPredicate& family = {}) {
    if (s > 5 || k > s || k < 0 || s < 1)
        throw std::invalid_argument("enumerate_flags: need 1 <= s <= 5 and 0 <= k <= s");

    // Canonical key: minimum edge mask over relabelings that place the flag at
    // positions 0..k-1 in order.
    auto flagged_key = [&](const FlaggedGraph& f) -> std::uint64_t {
        std::vector<int> rest;
        for (int v = 0; v < s; ++v)
            if (std::find(f.flag.begin(), f.flag.end(), v) == f.flag.end()) rest.push_back(v);
        std::uint64_t best = ~std::uint64_t{0};
        std::sort(rest.begin(), rest.end());
        do {
            std::vector<int> pos(s);
            for (int i = 0; i < k; ++i) pos[f.flag[i]] = i;
            for (std::size_t i = 0; i < rest.size(); ++i) pos[rest[i]] = k + static_cast<int>(i);
            std::uint64_t mask = 0;
            for (int u = 0; u < s; ++u)
                for (int v = u + 1; v < s; ++v)
                    if (f.base.has_edge(u, v)) mask |= std::uint64_t{1} << edge_bit(pos[u], pos[v]);
            best = std::min(best, mask);
        } while (std::next_permutation(rest.begin(), rest.end()));
        return best;
    };

    std::vector<std::pair<std::uint64_t, FlaggedGraph>> reps;
    const int edges = s * (s - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges); ++mask) {
        Graph base = graph_from_mask(s, mask);
        if (family && !family(base)) continue;
        std::vector<int> flag(k);
        std::iota(flag.begin(), flag.end(), 0);
        std::vector<int> tuple(s);
        std::iota(tuple.begin(), tuple.end(), 0);
        // all ordered k-tuples = k-prefixes of permutations, deduplicated
        std::vector<std::vector<int>> seen_prefixes;
        do {
            std::vector<int> pre(tuple.begin(), tuple.begin() + k);
            if (std::find(seen_prefixes.begin(), seen_prefixes.end(), pre) != seen_prefixes.end())
                continue;
            seen_prefixes.push_back(pre);
            FlaggedGraph f(base, pre);
            std::uint64_t key = flagged_key(f);
            bool dup = false;
            for (auto& [rk, rf] : reps)
                if (rk == key && flag_isomorphic(rf, f)) {
                    dup = true;
                    break;
                }
            if (!dup) reps.emplace_back(key, std::move(f));
        } while (std::next_permutation(tuple.begin(), tuple.end()));
    }

    std::stable_sort(reps.begin(), reps.end(), [&](const auto& a, const auto& b) {
        auto ca = canonical_form(a.second.base), cb = canonical_form(b.second.base);
        if (ca != cb) return ca < cb;
        return a.first < b.first;
    });
    std::vector<FlaggedGraph> out;
    out.reserve(reps.size());
    for (auto& [key, f] : reps) out.push_back(std::move(f));
    return out;
}

namespace detail {

template <typename Fn>
void for_each_ordered_tuple(int n, int k, Fn&& fn) {
    std::vector<int> tuple;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(tuple.size()) == k) {
            fn(std::span<const int>(tuple));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            tuple.push_back(v);
            self(self);
            tuple.pop_back();
            used[v] = false;
        }
    };
    rec(rec);
}

template <typename Fn>
void for_each_subset_avoiding(int n, int k, const std::vector<bool>& avoid, Fn&& fn) {
    std::vector<int> pool;
    for (int v = 0; v < n; ++v)
        if (!avoid[v]) pool.push_back(v);
    for_each_subset(static_cast<int>(pool.size()), k, [&](std::span<const int> idx) {
        std::vector<int> verts(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) verts[i] = pool[idx[i]];
        fn(std::span<const int>(verts));
    });
}

inline void check_pair_inputs(const FlaggedGraph& f1, const FlaggedGraph& f2, const Graph& g,
                              bool disjoint) {
    if (f1.order() != f2.order() || f1.flag_size() != f2.flag_size())
        throw std::invalid_argument("pair_density: flags must share (s,k)");
    const int s = f1.order(), k = f1.flag_size();
    const int need = disjoint ? 2 * s - k : s;
    if (g.n < need) throw std::invalid_argument("pair_density: graph too small for (s,k)");
}

}  // namespace detail

/// p(F1,F2;G) of Definition 4.2: random ordered k-set U, disjoint extensions
/// S1, S2; exact by exhaustive enumeration.
inline Rat pair_density(const FlaggedGraph& f1, const FlaggedGraph& f2, const Graph& g) {
    detail::check_pair_inputs(f1, f2, g, true);
    const int s = f1.order(), k = f1.flag_size(), n = g.n;
    long long favorable = 0;
    detail::for_each_ordered_tuple(n, k, [&](std::span<const int> u) {
        std::vector<bool> in_u(n, false);
        for (int v : u) in_u[v] = true;
        detail::for_each_subset_avoiding(n, s - k, in_u, [&](std::span<const int> s1) {
            if (!flag_isomorphic(induced_flagged(g, u, s1), f1)) return;
            std::vector<bool> in_us1 = in_u;
            for (int v : s1) in_us1[v] = true;
            detail::for_each_subset_avoiding(n, s - k, in_us1, [&](std::span<const int> s2) {
                if (flag_isomorphic(induced_flagged(g, u, s2), f2)) ++favorable;
            });
        });
    });
    const Int total = falling_factorial(n, k) * binomial(n - k, s - k) * binomial(n - s, s - k);
    return Rat(favorable) / Rat(total);
}

/// The B^G variant: S1 and S2 drawn independently from V \ U, overlap allowed.
inline Rat pair_density_independent(const FlaggedGraph& f1, const FlaggedGraph& f2,
                                    const Graph& g) {
    detail::check_pair_inputs(f1, f2, g, false);
    const int s = f1.order(), k = f1.flag_size(), n = g.n;
    long long favorable = 0;
    detail::for_each_ordered_tuple(n, k, [&](std::span<const int> u) {
        std::vector<bool> in_u(n, false);
        for (int v : u) in_u[v] = true;
        long long hits1 = 0, hits2 = 0;
        detail::for_each_subset_avoiding(n, s - k, in_u, [&](std::span<const int> sv) {
            auto f = induced_flagged(g, u, sv);
            if (flag_isomorphic(f, f1)) ++hits1;
            if (flag_isomorphic(f, f2)) ++hits2;
        });
        favorable += hits1 * hits2;
    });
    const Int ext = binomial(n - k, s - k);
    const Int total = falling_factorial(n, k) * ext * ext;
    return Rat(favorable) / Rat(total);
}

/// Symmetric matrix of exact pair densities over a flag list.
struct FlagMatrix {
    int dim = 0;
    std::vector<Rat> entries;

    explicit FlagMatrix(int d = 0) : dim(d), entries(std::size_t(d) * d) {}

    const Rat& at(int i, int j) const { return entries[std::size_t(i) * dim + j]; }

    void set(int i, int j, const Rat& v) {
        entries[std::size_t(i) * dim + j] = v;
        entries[std::size_t(j) * dim + i] = v;
    }

    SymMatrix to_double() const {
        SymMatrix m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) m.set(i, j, patlas::to_double(at(i, j)));
        return m;
    }

    bool operator==(const FlagMatrix&) const = default;
};

inline FlagMatrix flag_matrix(std::span<const FlaggedGraph> flags, const Graph& g) {
    FlagMatrix m(static_cast<int>(flags.size()));
    for (int i = 0; i < m.dim; ++i)
        for (int j = i; j < m.dim; ++j) m.set(i, j, pair_density(flags[i], flags[j], g));
    return m;
}

inline FlagMatrix flag_matrix_independent(std::span<const FlaggedGraph> flags, const Graph& g) {
    FlagMatrix m(static_cast<int>(flags.size()));
    for (int i = 0; i < m.dim; ++i)
        for (int j = i; j < m.dim; ++j) m.set(i, j, pair_density_independent(flags[i], flags[j], g));
    return m;
}

/// Gram data certifying B^G is PSD: B^G = scale * Q Q^T with one column per
/// ordered k-subset U and Q_{i,U} = Pr_S[F_i = (G|_{S+U}, U)].
struct GramFactorization {
    Rat scale;   // (n-k)!/n!
    int rows = 0, cols = 0;
    std::vector<Rat> q;  // row-major

    const Rat& at(int i, int u) const { return q[std::size_t(i) * cols + u]; }

    FlagMatrix product() const {
        FlagMatrix m(rows);
        for (int i = 0; i < rows; ++i)
            for (int j = i; j < rows; ++j) {
                Rat s = 0;
                for (int u = 0; u < cols; ++u) s += at(i, u) * at(j, u);
                m.set(i, j, s * scale);
            }
        return m;
    }
};

inline GramFactorization flag_gram(std::span<const FlaggedGraph> flags, const Graph& g) {
    if (flags.empty()) throw std::invalid_argument("flag_gram: empty flag list");
    const int s = flags[0].order(), k = flags[0].flag_size(), n = g.n;
    GramFactorization gram;
    gram.rows = static_cast<int>(flags.size());
    gram.cols = static_cast<int>(falling_factorial(n, k).convert_to<long long>());
    gram.scale = Rat(1) / Rat(falling_factorial(n, k));
    gram.q.assign(std::size_t(gram.rows) * gram.cols, Rat(0));
    const Int ext = binomial(n - k, s - k);
    int col = 0;
    detail::for_each_ordered_tuple(n, k, [&](std::span<const int> u) {
        std::vector<bool> in_u(n, false);
        for (int v : u) in_u[v] = true;
        std::vector<long long> hits(flags.size(), 0);
        detail::for_each_subset_avoiding(n, s - k, in_u, [&](std::span<const int> sv) {
            auto f = induced_flagged(g, u, sv);
            for (std::size_t i = 0; i < flags.size(); ++i)
                if (flag_isomorphic(f, flags[i])) ++hits[i];
        });
        for (std::size_t i = 0; i < flags.size(); ++i)
            gram.q[i * gram.cols + col] = Rat(hits[i]) / Rat(ext);
        ++col;
    });
    return gram;
}

/// Profile-weighted combination: sum of p_alpha * A^{H_alpha} as a real matrix.
inline SymMatrix profile_combination(std::span<const double> p,
                                     std::span<const FlagMatrix> matrices) {
    if (p.size() != matrices.size())
        throw std::invalid_argument("profile_combination: weight/matrix count mismatch");
    if (matrices.empty()) throw std::invalid_argument("profile_combination: empty input");
    double sum = 0;
    for (double w : p) {
        if (w < 0) throw std::invalid_argument("profile_combination: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("profile_combination: weights must sum to 1");
    const int dim = matrices[0].dim;
    SymMatrix out(dim);
    for (std::size_t a = 0; a < matrices.size(); ++a) {
        if (matrices[a].dim != dim)
            throw std::invalid_argument("profile_combination: dimension mismatch");
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                out.set(i, j, out.at(i, j) + p[a] * to_double(matrices[a].at(i, j)));
    }
    return out;
}

}  // namespace patlas
