#pragma once

#include "llg1d/vec3.hpp"

#include <vector>

namespace llg1d {

// Tolerance on |m(x)| - 1 for a field that claims saturation.
inline constexpr double kSaturationTol = 1e-10;

struct Grid1D {
    double length = 1.0;
    int n_points = 3;
    double spacing = 0.5;
};

// Uniform grid on [0, length] with node-centred values, x_i = i * spacing.
Grid1D make_grid(double length, int n_points);

// Magnetization values on grid nodes.
struct Field {
    std::vector<Vec3> v;

    Field() = default;
    explicit Field(std::size_t n, Vec3 fill = {}) : v(n, fill) {}

    std::size_t size() const { return v.size(); }
    Vec3& operator[](std::size_t i) { return v[i]; }
    const Vec3& operator[](std::size_t i) const { return v[i]; }
};

Field uniform_field(const Grid1D& g, const Vec3& value);

// Max over nodes of | |m(x)| - 1 |.
double sphere_residual(const Field& m);
bool is_saturated(const Field& m, double tol = kSaturationTol);
// Nodewise m <- m / |m|.
void project_to_sphere(Field& m);

// Second-difference Laplacian with Neumann closure via mirror ghost nodes:
// boundary rows are 2(m[1]-m[0])/h^2 and 2(m[n-2]-m[n-1])/h^2.
Field laplacian(const Field& m, const Grid1D& g);

struct EigenPair {
    int index = 0;
    double eigenvalue = 0.0;
    std::vector<double> eigenfunction; // scalar values on grid nodes
};

// Analytic Neumann eigenpairs e_0 = sqrt(1/l), e_j = sqrt(2/l) cos(j pi x / l),
// lambda_j = (j pi / l)^2, sampled on the nodes and re-orthonormalized under
// trapezoid quadrature.
std::vector<EigenPair> neumann_eigenpairs(const Grid1D& g, int n_modes);

// Componentwise orthogonal projection onto span of the basis, trapezoid quadrature.
Field spectral_project(const Field& m, const std::vector<EigenPair>& basis, const Grid1D& g);

struct FieldNorms {
    double l2 = 0.0;
    double h1 = 0.0;
    double linf = 0.0;
    double grad_l2 = 0.0;
};

FieldNorms norms(const Field& m, const Grid1D& g);

// Trapezoid-quadrature inner products.
double inner_l2(const Field& a, const Field& b, const Grid1D& g);
double inner_l2(const std::vector<double>& a, const std::vector<double>& b, const Grid1D& g);

// H1 distance between two fields.
double dist_h1(const Field& a, const Field& b, const Grid1D& g);

// Interpolation constant k = 2 max(1, 1/sqrt(length)).
double embedding_constant_k(double length);

} // namespace llg1d
