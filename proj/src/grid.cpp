#include "llg1d/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace llg1d {

Grid1D make_grid(double length, int n_points) {
    if (!(length > 0.0))
        throw std::invalid_argument("make_grid: length must be positive");
    if (n_points < 3)
        throw std::invalid_argument("make_grid: n_points must be >= 3");
    Grid1D g;
    g.length = length;
    g.n_points = n_points;
    g.spacing = length / (n_points - 1);
    return g;
}

Field uniform_field(const Grid1D& g, const Vec3& value) {
    return Field(static_cast<std::size_t>(g.n_points), value);
}

double sphere_residual(const Field& m) {
    double r = 0.0;
    for (const auto& p : m.v)
        r = std::max(r, std::abs(norm(p) - 1.0));
    return r;
}

bool is_saturated(const Field& m, double tol) { return sphere_residual(m) <= tol; }

void project_to_sphere(Field& m) {
    for (auto& p : m.v)
        p = normalized(p);
}

static void check_conforms(const Field& m, const Grid1D& g, const char* where) {
    if (m.size() != static_cast<std::size_t>(g.n_points))
        throw std::invalid_argument(std::string(where) + ": field does not conform to grid");
}

Field laplacian(const Field& m, const Grid1D& g) {
    check_conforms(m, g, "laplacian");
    const std::size_t n = m.size();
    const double inv_h2 = 1.0 / (g.spacing * g.spacing);
    Field out(n);
    out[0] = 2.0 * inv_h2 * (m[1] - m[0]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = inv_h2 * (m[i - 1] - 2.0 * m[i] + m[i + 1]);
    out[n - 1] = 2.0 * inv_h2 * (m[n - 2] - m[n - 1]);
    return out;
}

std::vector<EigenPair> neumann_eigenpairs(const Grid1D& g, int n_modes) {
    if (n_modes < 1 || n_modes > g.n_points)
        throw std::invalid_argument("neumann_eigenpairs: n_modes out of range");
    const int n = g.n_points;
    const double l = g.length;
    std::vector<EigenPair> basis;
    basis.reserve(n_modes);
    for (int j = 0; j < n_modes; ++j) {
        EigenPair ep;
        ep.index = j;
        ep.eigenvalue = (j * M_PI / l) * (j * M_PI / l);
        ep.eigenfunction.resize(n);
        if (j == 0) {
            double c = std::sqrt(1.0 / l);
            std::fill(ep.eigenfunction.begin(), ep.eigenfunction.end(), c);
        } else {
            double c = std::sqrt(2.0 / l);
            for (int i = 0; i < n; ++i)
                ep.eigenfunction[i] = c * std::cos(j * M_PI * (i * g.spacing) / l);
        }
        basis.push_back(std::move(ep));
    }
    // Gram-Schmidt under trapezoid quadrature; sampling leaves O(h^2) drift.
    for (int j = 0; j < n_modes; ++j) {
        auto& ej = basis[j].eigenfunction;
        for (int i = 0; i < j; ++i) {
            const auto& ei = basis[i].eigenfunction;
            double c = inner_l2(ej, ei, g);
            for (int p = 0; p < n; ++p)
                ej[p] -= c * ei[p];
        }
        double nrm = std::sqrt(inner_l2(ej, ej, g));
        for (int p = 0; p < n; ++p)
            ej[p] /= nrm;
    }
    return basis;
}

Field spectral_project(const Field& m, const std::vector<EigenPair>& basis, const Grid1D& g) {
    check_conforms(m, g, "spectral_project");
    if (basis.empty())
        throw std::invalid_argument("spectral_project: empty basis");
    const int n = g.n_points;
    Field out(static_cast<std::size_t>(n));
    for (const auto& ep : basis) {
        if (ep.eigenfunction.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("spectral_project: basis does not conform to grid");
        Vec3 coeff{};
        for (int i = 0; i < n; ++i) {
            double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            coeff += (w * g.spacing * ep.eigenfunction[i]) * m[i];
        }
        for (int i = 0; i < n; ++i)
            out[i] += ep.eigenfunction[i] * coeff;
    }
    return out;
}

FieldNorms norms(const Field& m, const Grid1D& g) {
    check_conforms(m, g, "norms");
    const int n = g.n_points;
    const double h = g.spacing;
    FieldNorms r;
    double l2sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        l2sq += w * h * norm2(m[i]);
        r.linf = std::max(r.linf, norm(m[i]));
    }
    double gradsq = 0.0;
    for (int i = 0; i + 1 < n; ++i)
        gradsq += norm2(m[i + 1] - m[i]) / h;
    r.l2 = std::sqrt(l2sq);
    r.grad_l2 = std::sqrt(gradsq);
    r.h1 = std::sqrt(l2sq + gradsq);
    return r;
}

double inner_l2(const Field& a, const Field& b, const Grid1D& g) {
    if (a.size() != b.size() || a.size() != static_cast<std::size_t>(g.n_points))
        throw std::invalid_argument("inner_l2: shape mismatch");
    const int n = g.n_points;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        s += w * g.spacing * dot(a[i], b[i]);
    }
    return s;
}

double inner_l2(const std::vector<double>& a, const std::vector<double>& b, const Grid1D& g) {
    if (a.size() != b.size() || a.size() != static_cast<std::size_t>(g.n_points))
        throw std::invalid_argument("inner_l2: shape mismatch");
    const int n = g.n_points;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        s += w * g.spacing * a[i] * b[i];
    }
    return s;
}

double dist_h1(const Field& a, const Field& b, const Grid1D& g) {
    if (a.size() != b.size())
        throw std::invalid_argument("dist_h1: shape mismatch");
    Field d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = a[i] - b[i];
    return norms(d, g).h1;
}

double embedding_constant_k(double length) {
    if (!(length > 0.0))
        throw std::invalid_argument("embedding_constant_k: length must be positive");
    return 2.0 * std::max(1.0, 1.0 / std::sqrt(length));
}

} // namespace llg1d
