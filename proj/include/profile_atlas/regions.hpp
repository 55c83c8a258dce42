#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "profile_atlas/linalg.hpp"
#include "profile_atlas/randmodels.hpp"

namespace patlas {

inline constexpr double kBoundaryTol = 1e-12;

/// Goodman's bound in its limit form: p0 + p3 >= 1/4.
inline bool goodman_holds(const PointK3& pt) {
    return pt.p0 + pt.p3 >= 0.25 - kBoundaryTol;
}

/// Unique root in [0,1] of 3b^2 - 2b^3 = p0 (equivalently b^3 + 3b^2(1-b)).
/// The cubic is strictly increasing on [0,1], so bisection is safe.
inline double beta_root(double p0) {
    check_unit(p0, "p0");
    // the cubic has zero slope at both endpoints, so bisection alone cannot
    // resolve them past sqrt(eps); return the exact roots directly
    if (p0 == 0) return 0;
    if (p0 == 1) return 1;
    double lo = 0, hi = 1;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (3 * mid * mid - 2 * mid * mid * mid < p0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

///// Upper boundary of the attainable (p0, p3) set: max of the clique branch
/// (via p0^{1/3}) and the complement branch (via beta).
inline double upper_envelope(double p0) {
    check_unit(p0, "p0");
    const double r = std::cbrt(p0);
    const double branch1 = std::pow(1 - r, 3) + 3 * r * (1 - r) * (1 - r);
    const double b = beta_root(p0);
    const double branch2 = std::pow(1 - b, 3);
    return std::max(branch1, branch2);
}

inline bool in_delta_k3(const PointK3& pt) {
    if (pt.p0 < -kBoundaryTol || pt.p3 < -kBoundaryTol || pt.p0 > 1 + kBoundaryTol ||
        pt.p3 > 1 + kBoundaryTol)
        return false;
    return goodman_holds(pt) &&
           pt.p3 <= upper_envelope(std::clamp(pt.p0, 0.0, 1.0)) + kBoundaryTol;
}

/// Distance (in constraint units) to the nearest boundary of B1 u B2;
/// positive inside. Used by callers that need an interior margin.
inline double delta_k3_margin(const PointK3& pt) {
    const double m1 = std::min({pt.p0, pt.p3, 1 - pt.p0, 1 - pt.p3});
    const double m2 = pt.p0 + pt.p3 - 0.25;
    const double m3 = upper_envelope(std::clamp(pt.p0, 0.0, 1.0)) - pt.p3;
    return std::min({m1, m2, m3});
}

enum class CurveName { C1, C2, Cprime };

struct CurveSample {
    double t = 0;   // curve parameter
    double p0 = 0, p3 = 0;
};

inline CurveSample curve_point(CurveName name, double t) {
    switch (name) {
        case CurveName::C1:
            return {t, std::pow(1 - t, 3) + 3 * (1 - t) * (1 - t) * t, t * t * t};
        case CurveName::C2:
            return {t, t * t * t, std::pow(1 - t, 3) + 3 * (1 - t) * (1 - t) * t};
        case CurveName::Cprime:
            return {t, t * t * t, std::pow(1 - t, 3)};
    }
    throw std::invalid_argument("curve_point: unknown curve");
}

inline std::vector<CurveSample> curve_points(CurveName name, int count) {
    if (count < 2) throw std::invalid_argument("curve_points: need count >= 2");
    std::vector<CurveSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(curve_point(name, double(i) / (count - 1)));
    return out;
}

// The 2x2 combination p0 A^{K3bar} + p1 A^{P3bar} + p2 A^{P3} in closed form.
struct TfMatrix {
    double a11, a12, a22;
};

inline TfMatrix tf_matrix(const PointTF& pt) {
    return {pt.p0 + pt.p1 / 3, (pt.p1 + pt.p2) / 3, pt.p2 / 3};
}

/// Explicit scalar form of the membership test (9x the combination determinant).
inline double tf_constraint(double p0, double p1) {
    return (3 * p0 + p1) * (1 - p0 - p1) - (1 - p0) * (1 - p0);
}

/// Triangle-free region membership: the 2x2 flag combination is PSD.
inline bool tf_membership(const PointTF& pt) {
    if (std::abs(pt.p0 + pt.p1 + pt.p2 - 1) > 1e-12)
        throw std::invalid_argument("tf_membership: coordinates must sum to 1");
    const TfMatrix m = tf_matrix(pt);
    return psd2x2(m.a11, m.a12, m.a22, kBoundaryTol);
}

struct TfParams {
    double alpha = 0, q = 0;
};

/// Invert the bipartite-model expectations: find (alpha,q) with
/// E[p0], E[p1] of G_{alpha,q} equal to the given values. Picks the
/// alpha <= 1/2 root; at p0 = 1 the profile degenerates to q = 0 and
/// alpha is immaterial.
inline TfParams tf_inverse(double p0, double p1) {
    const double p2 = 1 - p0 - p1;
    if (p2 < -kBoundaryTol || !tf_membership({p0, p1, std::max(p2, 0.0)}))
        throw std::domain_error("tf_inverse: profile outside the triangle-free region");
    if (p2 <= kBoundaryTol) {
        if (std::abs(p0 - 1) > 1e-9)
            throw std::domain_error("tf_inverse: p0 + p1 = 1 is feasible only at p0 = 1");
        return {0.5, 0.0};
    }
    const double q = (2 - 2 * p0 - 2 * p1) / (2 - 2 * p0 - p1);
    const double rhs = tf_constraint(p0, p1) / (3 * p2);
    const double root = std::sqrt(std::max(rhs, 0.0));
    return {0.5 * (1 - root), q};
}

struct InversionK3 {
    ModelParams params;
    char family = 'H';  // 'H' or '1' for H1
    double residual = 0;
};

namespace detail {

// Damped Newton with a finite-difference Jacobian on the chosen forward map.
template <typename Map>
std::optional<InversionK3> newton_2d(Map&& fwd, char family, double x0, double a0,
                                     const PointK3& target, double tol) {
    auto residual = [&](double x, double a) {
        const PointK3 p = fwd(x, a);
        return std::hypot(p.p0 - target.p0, p.p3 - target.p3);
    };
    double x = x0, a = a0;
    double res = residual(x, a);
    for (int it = 0; it < 100; ++it) {
        if (res < tol) return InversionK3{{x, a, 0, 0}, family, res};
        const double h = 1e-7;
        const double hx = (x + h <= 1.0) ? h : -h;
        const double ha = (a + h <= 1.0) ? h : -h;
        const PointK3 f = fwd(x, a);
        const PointK3 fx = fwd(x + hx, a);
        const PointK3 fa = fwd(x, a + ha);
        const double j00 = (fx.p0 - f.p0) / hx, j01 = (fa.p0 - f.p0) / ha;
        const double j10 = (fx.p3 - f.p3) / hx, j11 = (fa.p3 - f.p3) / ha;
        const double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-14) return std::nullopt;
        const double r0 = f.p0 - target.p0, r1 = f.p3 - target.p3;
        double dx = -(j11 * r0 - j01 * r1) / det;
        double da = -(-j10 * r0 + j00 * r1) / det;
        // halve the step until the residual decreases
        bool advanced = false;
        for (int bt = 0; bt < 30; ++bt) {
            const double nx = std::clamp(x + dx, 0.0, 1.0);
            const double na = std::clamp(a + da, 0.0, 1.0);
            const double nres = residual(nx, na);
            if (nres < res) {
                x = nx;
                a = na;
                res = nres;
                advanced = true;
                break;
            }
            dx *= 0.5;
            da *= 0.5;
        }
        if (!advanced) break;
    }
    if (res < tol) return InversionK3{{x, a, 0, 0}, family, res};
    return std::nullopt;
}

}  // namespace detail

/// Constructive inverse of the region map: find two-block parameters in family H or H1
/// whose expected profile hits the target. Multistart Newton over a 21x21
/// grid of (x,a); family H is tried first, grid order decides ties.
inline InversionK3 region_inverse_k3(const PointK3& pt, double tol = 1e-6) {
    if (delta_k3_margin(pt) < -tol)
        throw std::domain_error("region_inverse_k3: point outside the (p0,p3) region");
    double best_res = std::numeric_limits<double>::infinity();
    auto fwd_h = [](double x, double a) { return homotopy_H(x, a); };
    auto fwd_h1 = [](double x, double a) { return homotopy_H1(x, a); };
    for (int fam = 0; fam < 2; ++fam) {
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                const double x0 = i / 20.0, a0 = j / 20.0;
                auto result = (fam == 0)
                                  ? detail::newton_2d(fwd_h, 'H', x0, a0, pt, tol)
                                  : detail::newton_2d(fwd_h1, '1', x0, a0, pt, tol);
                if (result) {
                    result->params = (fam == 0)
                                         ? ModelParams{result->params.x, result->params.a,
                                                       1 - result->params.a, 1 - result->params.a}
                                         : ModelParams{result->params.x, result->params.a,
                                                       result->params.a, 1 - result->params.a};
                    return *result;
                }
                const PointK3 f = (fam == 0) ? homotopy_H(x0, a0) : homotopy_H1(x0, a0);
                best_res = std::min(best_res, std::hypot(f.p0 - pt.p0, f.p3 - pt.p3));
            }
    }
    throw std::runtime_error("region_inverse_k3: no convergence; best residual " +
                             std::to_string(best_res));
}

}  // namespace patlas
