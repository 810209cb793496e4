#include "llg1d/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace llg1d;

TEST_CASE("grid construction and validation") {
    Grid1D g = make_grid(1.0, 101);
    CHECK(g.spacing == 0.01);
    CHECK(make_grid(2.0, 3).spacing == 1.0);
    CHECK_THROWS_AS(make_grid(0.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 2), std::invalid_argument);
}

TEST_CASE("sphere residual and projection") {
    Grid1D g = make_grid(1.0, 5);
    Field m = uniform_field(g, {0.0, 2.0, 0.0});
    CHECK(sphere_residual(m) == 1.0);
    CHECK_FALSE(is_saturated(m));
    project_to_sphere(m);
    CHECK(is_saturated(m));
    CHECK(m[0].y == 1.0);
}

TEST_CASE("Laplacian: constants, quadratics, summation by parts") {
    Grid1D g = make_grid(1.0, 33);
    Field c = uniform_field(g, {1.0, -2.0, 0.5});
    Field lc = laplacian(c, g);
    for (const auto& v : lc.v)
        CHECK(norm(v) == 0.0);

    // x^2 has exact second difference 2 in the interior
    Field q(static_cast<std::size_t>(g.n_points));
    for (int i = 0; i < g.n_points; ++i) {
        double x = i * g.spacing;
        q[i] = {x * x, 0.0, 0.0};
    }
    Field lq = laplacian(q, g);
    for (int i = 1; i + 1 < g.n_points; ++i)
        CHECK(lq[i].x == doctest::Approx(2.0).epsilon(1e-10));

    // mirror-ghost closure keeps <Lap m, m> = -(1/h) sum |m_{i+1}-m_i|^2
    Field w(static_cast<std::size_t>(g.n_points));
    for (int i = 0; i < g.n_points; ++i) {
        double th = M_PI * i * g.spacing;
        w[i] = {std::cos(th), std::sin(th), 0.0};
    }
    double lhs = inner_l2(laplacian(w, g), w, g);
    double rhs = 0.0;
    for (int i = 0; i + 1 < g.n_points; ++i)
        rhs -= norm2(w[i + 1] - w[i]) / g.spacing;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("Neumann eigenpairs are orthonormal eigenvectors of the discrete operator") {
    Grid1D g = make_grid(1.0, 65);
    auto basis = neumann_eigenpairs(g, 6);
    CHECK(basis[0].eigenvalue == 0.0);
    CHECK(basis[2].eigenvalue == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-14));

    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            double ip = inner_l2(basis[a].eigenfunction, basis[b].eigenfunction, g);
            CHECK(ip == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
        }

    // discrete Laplacian applied to a sampled eigenfunction is close to
    // -lambda e (O(h^2) consistency)
    Field e1(static_cast<std::size_t>(g.n_points));
    for (int i = 0; i < g.n_points; ++i)
        e1[i] = {basis[1].eigenfunction[i], 0.0, 0.0};
    Field le = laplacian(e1, g);
    for (int i = 1; i + 1 < g.n_points; ++i)
        CHECK(le[i].x == doctest::Approx(-basis[1].eigenvalue * e1[i].x).epsilon(2e-3));
}

TEST_CASE("spectral projection: idempotent, reproduces in-span fields") {
    Grid1D g = make_grid(1.0, 33);
    auto basis = neumann_eigenpairs(g, 4);
    Field m(static_cast<std::size_t>(g.n_points));
    for (int i = 0; i < g.n_points; ++i)
        m[i] = {0.3 * basis[0].eigenfunction[i] + 0.2 * basis[3].eigenfunction[i],
                -basis[1].eigenfunction[i], 0.0};
    Field p = spectral_project(m, basis, g);
    for (int i = 0; i < g.n_points; ++i)
        CHECK(norm(p[i] - m[i]) < 1e-12);
    Field pp = spectral_project(p, basis, g);
    for (int i = 0; i < g.n_points; ++i)
        CHECK(norm(pp[i] - p[i]) < 1e-13);
}

TEST_CASE("norms against hand-computed values") {
    Grid1D g = make_grid(1.0, 3);
    Field m(3);
    m[0] = {1, 0, 0};
    m[1] = {0, 1, 0};
    m[2] = {0, 0, 2};
    FieldNorms nm = norms(m, g);
    // trapezoid: 0.5*0.5*1 + 0.5*1 + 0.5*0.5*4 = 1.75
    CHECK(nm.l2 == doctest::Approx(std::sqrt(1.75)).epsilon(1e-15));
    // grad: (|m1-m0|^2 + |m2-m1|^2)/h = (2 + 5)/0.5 = 14
    CHECK(nm.grad_l2 == doctest::Approx(std::sqrt(14.0)).epsilon(1e-15));
    CHECK(nm.h1 == doctest::Approx(std::sqrt(15.75)).epsilon(1e-15));
    CHECK(nm.linf == 2.0);

    Field z = uniform_field(g, {1, 0, 0});
    CHECK(dist_h1(m, m, g) == 0.0);
    CHECK(dist_h1(z, uniform_field(g, {-1, 0, 0}), g) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("embedding constant") {
    CHECK(embedding_constant_k(1.0) == 2.0);
    CHECK(embedding_constant_k(4.0) == 2.0);
    CHECK(embedding_constant_k(0.25) == 4.0);
    CHECK_THROWS_AS(embedding_constant_k(0.0), std::invalid_argument);
}
