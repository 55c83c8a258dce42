#pragma once

#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "profile_atlas/flags.hpp"
#include "profile_atlas/graph.hpp"
#include "profile_atlas/linalg.hpp"

namespace patlas {

namespace detail {

inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

/// Sparse-SDPA (.dat-s) encoding of the primal
///   max sum_a d(H;H_a) p_a   s.t.  p_a >= 0, sum p_a = 1,
///   sum_a p_a A^{H_a} PSD.
/// Block 1: the l x l PSD combination. Block 2: diagonal t-block for p >= 0.
/// Block 3: diagonal 2-block encoding sum p = 1 as a pair of inequalities.
/// Coefficients carry 12 significant digits; exact rationals are lossy here.
inline std::string emit_sdp(const Graph& target, std::span<const Graph> types,
                            std::span<const FlagMatrix> matrices) {
    if (types.size() != matrices.size() || types.empty())
        throw std::invalid_argument("emit_sdp: need one flag matrix per graph type");
    const int t = static_cast<int>(types.size());
    const int l = matrices[0].dim;
    for (const auto& m : matrices)
        if (m.dim != l) throw std::invalid_argument("emit_sdp: flag matrix dimension mismatch");
    for (const auto& h : types)
        if (target.n > h.n) throw std::invalid_argument("emit_sdp: |H| exceeds a type order");

    std::string out;
    out += "* flag-algebra primal: maximize sum_a d(H;H_a) p_a\n";
    out += "* variables p_1..p_" + std::to_string(t) +
           "; block1 PSD combination, block2 p>=0, block3 sum p = 1\n";
    out += std::to_string(t) + " = mDIM\n";
    out += "3 = nBLOCK\n";
    out += std::to_string(l) + " -" + std::to_string(t) + " -2 = bLOCKsTRUCT\n";

    // objective: induced densities of the target in each type
    for (int a = 0; a < t; ++a) {
        if (a) out += " ";
        out += detail::fmt12(to_double(induced_density(target, types[a])));
    }
    out += "\n";

    auto entry = [&](int var, int block, int i, int j, double v) {
        out += std::to_string(var) + " " + std::to_string(block) + " " + std::to_string(i) + " " +
               std::to_string(j) + " " + detail::fmt12(v) + "\n";
    };

    // F0: only the equality block (sum p >= 1 and -sum p >= -1)
    entry(0, 3, 1, 1, 1.0);
    entry(0, 3, 2, 2, -1.0);
    for (int a = 0; a < t; ++a) {
        for (int i = 0; i < l; ++i)
            for (int j = i; j < l; ++j) {
                const double v = to_double(matrices[a].at(i, j));
                if (v != 0.0) entry(a + 1, 1, i + 1, j + 1, v);
            }
        entry(a + 1, 2, a + 1, a + 1, 1.0);
        entry(a + 1, 3, 1, 1, 1.0);
        entry(a + 1, 3, 2, 2, -1.0);
    }
    return out;
}

/// Dual bound of the program above: for any PSD Q,
///   max_a [ d(H;H_a) + Tr(Q A^{H_a}) ]
/// upper-bounds the primal optimum (weak duality).
inline double dual_bound(const Graph& target, std::span<const Graph> types,
                         std::span<const FlagMatrix> matrices, const SymMatrix& q) {
    if (types.size() != matrices.size() || types.empty())
        throw std::invalid_argument("dual_bound: need one flag matrix per graph type");
    if (min_eigenvalue(q) < -1e-9) throw std::invalid_argument("dual_bound: Q is not PSD");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < types.size(); ++a) {
        if (matrices[a].dim != q.dim)
            throw std::invalid_argument("dual_bound: Q/flag matrix dimension mismatch");
        double tr = 0;
        for (int i = 0; i < q.dim; ++i)
            for (int j = 0; j < q.dim; ++j) tr += q.at(i, j) * to_double(matrices[a].at(j, i));
        best = std::max(best, to_double(induced_density(target, types[a])) + tr);
    }
    return best;
}

}  // namespace patlas
