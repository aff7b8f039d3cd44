#include "hhdkit/planar_hhd.hpp"

#include <cmath>
#include <stdexcept>

namespace hhdkit {

namespace {

PlanarHhd assemble(ZPoly w, RealPoly2 f, RealPoly2 g) {
    PlanarHhd d;
    RealParts parts = zpoly_to_real_parts(w);
    d.v = std::move(parts.v);
    d.h = std::move(parts.h);
    d.w = std::move(w);
    d.f = std::move(f);
    d.g = std::move(g);
    return d;
}

// field (f, g) encoded by dzbar/dt = dW/dz
std::pair<RealPoly2, RealPoly2> field_from_potential(const ZPoly& w) {
    RealPoly2 f, g;
    for (const auto& [key, c] : zpoly_to_xy(d_dz(w))) {
        f.add_term(key.first, key.second, c.real());
        g.add_term(key.first, key.second, -c.imag());
    }
    return {f, g};
}

}  // namespace

PlanarHhd complex_potential(const RealPoly2& f, const RealPoly2& g) {
    ZPoly w = integrate_dz(field_to_zpoly(f, g));
    return assemble(std::move(w), f, g);
}

PlanarHhd gauge_shift(const PlanarHhd& d, const ZPoly& phi) {
    for (const auto& [key, c] : phi.terms()) {
        if (key.first != 0) {
            throw std::invalid_argument("gauge_shift: phi must be a polynomial in zbar only");
        }
    }
    return assemble(d.w + phi, d.f, d.g);
}

RealPoly2 strict_orthogonality_defect(const PlanarHhd& d) {
    RealPoly2 vx = d_dx(d.v), vy = d_dy(d.v);
    RealPoly2 hx = d_dx(d.h), hy = d_dy(d.h);
    // grad V . J grad H with J grad H = (Hy, -Hx)
    return vx * hy - vy * hx;
}

PlanarHhd solve_linear_planar(Complex a, Complex b) {
    ZPoly w;
    w.add_term(2, 0, a * 0.5);
    w.add_term(1, 1, b);
    if (std::abs(b) <= kCoeffPrune) {
        w.add_term(0, 2, std::conj(a) * 0.5);
    } else {
        w.add_term(0, 2, std::conj(a) * b / (2.0 * std::conj(b)));
    }
    auto [f, g] = field_from_potential(w);
    return assemble(std::move(w), std::move(f), std::move(g));
}

QuadComplexCoeffs quad_complex_coeffs(const QuadHomField& q) {
    QuadComplexCoeffs out;
    out.a = 0.25 * Complex(q.p1 - q.q2 - q.r1, -q.p2 - q.q1 + q.r2);
    out.b = 0.5 * Complex(q.p1 + q.r1, -(q.p2 + q.r2));
    out.c = 0.25 * Complex(q.p1 + q.q2 - q.r1, -q.p2 + q.q1 + q.r2);
    return out;
}

double quadratic_condition(const QuadHomField& q) {
    return q.q1 * q.q1 - 2.0 * (q.p2 - q.r2) * q.q1 - 4.0 * q.p2 * q.r2 +
           q.q2 * q.q2 + 2.0 * (q.p1 - q.r1) * q.q2 - 4.0 * q.p1 * q.r1;
}

Outcome<PlanarHhd> solve_quadratic(const QuadHomField& q) {
    const double cond = quadratic_condition(q);
    const double scale = std::max({std::abs(q.p1), std::abs(q.q1), std::abs(q.r1),
                                   std::abs(q.p2), std::abs(q.q2), std::abs(q.r2)});
    if (std::abs(cond) > 1e-9 * (1.0 + scale * scale)) {
        return Outcome<PlanarHhd>::failure(
            "no strictly orthogonal HHD by this construction: coefficient condition value " +
            std::to_string(cond) + " is nonzero");
    }
    const auto [a, b, c] = quad_complex_coeffs(q);
    Complex gauge_c;
    if (std::abs(b) > 1e-12 * (1.0 + scale)) {
        gauge_c = 2.0 * std::conj(a) * c / (3.0 * std::conj(b));
    } else if (std::abs(c) <= 1e-9 * (1.0 + scale)) {
        // b = 0 forces c = 0 through |b|^2 = 4|c|^2; a single zbar^3 gauge
        // term then matches |a z^2| = |phi'(zbar)|
        gauge_c = std::conj(a) / 3.0;
    } else {
        return Outcome<PlanarHhd>::failure(
            "b = 0 with |c| = " + std::to_string(std::abs(c)) +
            ": no single-term antiholomorphic gauge matches the defect equation");
    }
    ZPoly w;
    w.add_term(3, 0, a / 3.0);
    w.add_term(2, 1, b * 0.5);
    w.add_term(1, 2, c);
    w.add_term(0, 3, gauge_c);
    RealPoly2 f, g;
    f.add_term(2, 0, q.p1);
    f.add_term(1, 1, q.q1);
    f.add_term(0, 2, q.r1);
    g.add_term(2, 0, q.p2);
    g.add_term(1, 1, q.q2);
    g.add_term(0, 2, q.r2);
    return Outcome<PlanarHhd>::success(assemble(std::move(w), std::move(f), std::move(g)));
}

Complex orbital_derivative_W(const PlanarHhd& d, Complex z) {
    const Complex wz = evaluate(d_dz(d.w), z);
    const Complex wzb = evaluate(d_dzbar(d.w), z);
    return std::norm(wz) + wzb * wz;
}

std::pair<RealPoly2, RealPoly2> reconstructed_field(const PlanarHhd& d) {
    RealPoly2 f = RealPoly2() - d_dx(d.v) + d_dy(d.h);
    RealPoly2 g = RealPoly2() - d_dy(d.v) - d_dx(d.h);
    return {f, g};
}

ComplexLinearField linear_field_to_complex(const RealMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw std::invalid_argument("linear_field_to_complex: matrix must be 2x2");
    }
    ComplexLinearField out;
    out.a = 0.5 * Complex(m(0, 0) - m(1, 1), -(m(1, 0) + m(0, 1)));
    out.b = 0.5 * Complex(m(0, 0) + m(1, 1), m(0, 1) - m(1, 0));
    return out;
}

}  // namespace hhdkit
