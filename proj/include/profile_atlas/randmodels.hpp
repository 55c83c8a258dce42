#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "profile_atlas/graph.hpp"

namespace patlas {

/// (p0,p3) projection of a 3-local profile.
struct PointK3 {
    double p0 = 0, p3 = 0;
};

/// Triangle-free profile point (p0,p1,p2).
struct PointTF {
    double p0 = 0, p1 = 0, p2 = 0;
};

/// Two-block model G_{x,a,b,c}: block A holds a fraction x of the vertices,
/// edges appear independently with probability a (inside A), b (inside B),
/// c (across).
struct ModelParams {
    double x = 0, a = 0, b = 0, c = 0;
};

inline void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

inline void check_params(const ModelParams& p) {
    check_unit(p.x, "x");
    check_unit(p.a, "a");
    check_unit(p.b, "b");
    check_unit(p.c, "c");
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based per-pair variate: a graph is a pure function of (seed,n,x,..)
// and pairs can be generated in any order.
inline double pair_uniform(std::uint64_t seed, int u, int v) {
    if (u > v) std::swap(u, v);
    std::uint64_t h = splitmix64(seed ^ splitmix64((std::uint64_t(u) << 32) | std::uint64_t(v)));
    return double(h >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Sample from G_{x,a,b,c} with |A| = round(x*n); vertices 0..|A|-1 form A.
inline BitGraph sample_gxabc(int n, const ModelParams& p, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_gxabc: need n >= 2");
    check_params(p);
    const int na = static_cast<int>(std::lround(p.x * n));
    BitGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double prob = (v < na) ? p.a : (u >= na) ? p.b : p.c;
            if (prob == 1.0 || (prob > 0.0 && detail::pair_uniform(seed, u, v) < prob))
                g.add_edge(u, v);
        }
    return g;
}

/// Limit expectations of (p0,p3) under G_{x,a,b,c} (o(1) terms dropped).
inline PointK3 expected_profile_k3(const ModelParams& p) {
    check_params(p);
    const double x = p.x, a = p.a, b = p.b, c = p.c, y = 1 - x;
    const double p0 = x * x * x * std::pow(1 - a, 3) + y * y * y * std::pow(1 - b, 3) +
                      3 * x * x * y * (1 - a) * (1 - c) * (1 - c) +
                      3 * x * y * y * (1 - b) * (1 - c) * (1 - c);
    const double p3 = x * x * x * a * a * a + y * y * y * b * b * b + 3 * x * x * y * a * c * c +
                      3 * x * y * y * b * c * c;
    return {p0, p3};
}

/// Bipartite model G_{alpha,q} = G_{alpha,0,0,q}: limit expectations of (p0,p1).
inline std::pair<double, double> expected_profile_tf(double alpha, double q) {
    check_unit(alpha, "alpha");
    check_unit(q, "q");
    const double s = alpha * (1 - alpha);
    return {1 - 3 * s * q * (2 - q), 6 * s * q * (1 - q)};
}

/// H(x,a): profile of G_{x,a,1-a,1-a}.
inline PointK3 homotopy_H(double x, double a) {
    return expected_profile_k3({x, a, 1 - a, 1 - a});
}

/// H1(x,a): profile of G_{x,a,a,1-a}.
inline PointK3 homotopy_H1(double x, double a) {
    return expected_profile_k3({x, a, a, 1 - a});
}

struct SampleReport {
    struct Trial {
        int trial = 0;
        std::uint64_t seed = 0;
        double p0_emp = 0, p3_emp = 0, p0_exp = 0, p3_exp = 0;
        double dev_max = 0;
    };

    int n = 0;
    int trials = 0;
    std::vector<Trial> rows;
    double max_deviation = 0;
    double fraction_within_sqrt = 0;  // trials with dev_max <= 1/sqrt(n)
};

/// Empirical concentration check: sampled profiles against the
/// limit expectations, with 1/sqrt(n) as the reference scale.
inline SampleReport concentration_test(const ModelParams& p, int n, int trials,
                                       std::uint64_t seed) {
    if (n < 100) throw std::invalid_argument("concentration_test: need n >= 100");
    if (trials < 1) throw std::invalid_argument("concentration_test: need trials >= 1");
    const PointK3 expect = expected_profile_k3(p);
    SampleReport report;
    report.n = n;
    report.trials = trials;
    int within = 0;
    const double ref = 1.0 / std::sqrt(double(n));
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = detail::splitmix64(seed + std::uint64_t(t));
        const Profile3 prof = sample_gxabc(n, p, trial_seed).profile3();
        SampleReport::Trial row;
        row.trial = t;
        row.seed = trial_seed;
        row.p0_emp = to_double(prof.p0);
        row.p3_emp = to_double(prof.p3);
        row.p0_exp = expect.p0;
        row.p3_exp = expect.p3;
        row.dev_max = std::max(std::abs(row.p0_emp - expect.p0), std::abs(row.p3_emp - expect.p3));
        report.max_deviation = std::max(report.max_deviation, row.dev_max);
        if (row.dev_max <= ref) ++within;
        report.rows.push_back(row);
    }
    report.fraction_within_sqrt = double(within) / trials;
    return report;
}

}  // namespace patlas
