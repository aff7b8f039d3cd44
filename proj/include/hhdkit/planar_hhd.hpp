#pragma once

#include <utility>

#include "hhdkit/matrix_ops.hpp"
#include "hhdkit/outcome.hpp"
#include "hhdkit/zpoly.hpp"

namespace hhdkit {

/// Planar decomposition F = -grad V + J grad H carried together with its
/// complex potential W = 2(-V + iH) and the decomposed field (f, g).
struct PlanarHhd {
    RealPoly2 v;
    RealPoly2 h;
    ZPoly w;
    RealPoly2 f;
    RealPoly2 g;
};

/// Homogeneous quadratic planar field
/// f = p1 x^2 + q1 xy + r1 y^2, g = p2 x^2 + q2 xy + r2 y^2.
struct QuadHomField {
    double p1, q1, r1, p2, q2, r2;
};

/// The z^2, z zbar, zbar^2 coefficients of f - i g for a QuadHomField.
struct QuadComplexCoeffs {
    Complex a, b, c;
};

/// Decompose a polynomial field by integrating f - i g in z. Always an HHD;
/// not necessarily strictly orthogonal.
PlanarHhd complex_potential(const RealPoly2& f, const RealPoly2& g);

/// Add an antiholomorphic gauge term phi(zbar) to the potential; the
/// represented field is unchanged. Throws if phi has any z-bearing term.
PlanarHhd gauge_shift(const PlanarHhd& d, const ZPoly& phi);

/// grad V . J grad H as a polynomial in (x, y); identically zero iff the
/// decomposition is strictly orthogonal. Equals -1/4 of mod_squared_diff(w)
/// rewritten to (x, y).
RealPoly2 strict_orthogonality_defect(const PlanarHhd& d);

/// Strictly orthogonal potential for the linear field f - i g = a z + b zbar:
/// W = (a/2) z^2 + b z zbar + phi(zbar) with phi = (conj(a) b / (2 conj(b))) zbar^2,
/// or (a/2) zbar^2 when b = 0.
PlanarHhd solve_linear_planar(Complex a, Complex b);

/// The z^2/z zbar/zbar^2 coefficients of a quadratic homogeneous field.
QuadComplexCoeffs quad_complex_coeffs(const QuadHomField& q);

/// Left-hand side of the coefficient condition
/// q1^2 - 2(p2 - r2) q1 - 4 p2 r2 + q2^2 + 2(p1 - r1) q2 - 4 p1 r1;
/// the cubic-ansatz construction applies iff this vanishes
/// (equivalently |b|^2 = 4 |c|^2).
double quadratic_condition(const QuadHomField& q);

/// Strictly orthogonal decomposition of a homogeneous quadratic field via
/// W = (a/3) z^3 + (b/2) |z|^2 z + c |z|^2 zbar + C zbar^3, or a declared
/// failure when the coefficient condition does not hold.
Outcome<PlanarHhd> solve_quadratic(const QuadHomField& q);

/// Orbital derivative of the potential at a point:
/// |dW/dz|^2 + (dW/dzbar)(dW/dz); real and nonnegative for holomorphic W.
Complex orbital_derivative_W(const PlanarHhd& d, Complex z);

/// (-dV/dx + dH/dy, -dV/dy - dH/dx); should reproduce (f, g).
std::pair<RealPoly2, RealPoly2> reconstructed_field(const PlanarHhd& d);

/// Complex form f - i g = a z + b zbar of the linear field given by a
/// 2x2 matrix.
struct ComplexLinearField {
    Complex a, b;
};
ComplexLinearField linear_field_to_complex(const RealMatrix& m);

}  // namespace hhdkit
