#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace patlas {

/// Dense real symmetric matrix; set() writes both triangles.
struct SymMatrix {
    int dim = 0;
    std::vector<double> a;

    explicit SymMatrix(int d = 0) : dim(d), a(std::size_t(d) * d, 0.0) {}

    double at(int i, int j) const { return a[std::size_t(i) * dim + j]; }

    void set(int i, int j, double v) {
        a[std::size_t(i) * dim + j] = v;
        a[std::size_t(j) * dim + i] = v;
    }
};

/// Eigenvalues by cyclic Jacobi sweeps; adequate for the tiny matrices here.
inline std::vector<double> jacobi_eigenvalues(SymMatrix m, double off_tol = 1e-13) {
    const int n = m.dim;
    auto off_norm = [&] {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += m.at(i, j) * m.at(i, j);
        return std::sqrt(2 * s);
    };
    for (int sweep = 0; sweep < 100 && off_norm() > off_tol; ++sweep) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (m.at(q, q) - m.at(p, p)) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = m.at(p, p), aqq = m.at(q, q);
                m.set(p, p, c * c * app - 2 * s * c * apq + s * s * aqq);
                m.set(q, q, s * s * app + 2 * s * c * apq + c * c * aqq);
                m.set(p, q, 0.0);
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = m.at(k, p), akq = m.at(k, q);
                    m.set(k, p, c * akp - s * akq);
                    m.set(k, q, s * akp + c * akq);
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m.at(i, i);
    return ev;
}

inline double min_eigenvalue(const SymMatrix& m) {
    double lo = std::numeric_limits<double>::infinity();
    for (double v : jacobi_eigenvalues(m)) lo = std::min(lo, v);
    return lo;
}

/// Frobenius distance to the PSD cone: sqrt(sum of squared negative eigenvalues).
inline double psd_distance(const SymMatrix& m) {
    for (int i = 0; i < m.dim; ++i)
        for (int j = i + 1; j < m.dim; ++j)
            if (m.at(i, j) != m.at(j, i))
                throw std::invalid_argument("psd_distance: matrix not symmetric");
    double s = 0;
    for (double v : jacobi_eigenvalues(m))
        if (v < 0) s += v * v;
    return std::sqrt(s);
}

/// Closed-form 2x2 PSD test; avoids float eigenvalue edge cases at boundaries.
inline bool psd2x2(double a11, double a12, double a22, double tol = 0.0) {
    return a11 >= -tol && a22 >= -tol && a11 * a22 - a12 * a12 >= -tol;
}

}  // namespace patlas
