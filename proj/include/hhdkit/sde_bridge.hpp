#pragma once

#include "hhdkit/linear_hhd.hpp"
#include "hhdkit/outcome.hpp"

namespace hhdkit {

/// Linear SDE-style decomposition F = -(D + Q) U with D, U symmetric and
/// Q skew-symmetric.
struct SdeDecomposition {
    RealMatrix d;
    RealMatrix q;
    RealMatrix u;
    RealMatrix f;
};

/// Validate the structural invariants of an SdeDecomposition; returns an
/// explanation for the first violated one, empty string when valid.
std::string validate_sde(const SdeDecomposition& s, double tol = kDefaultTol);

/// P = D U, H = -Q U. Works exactly when D U is symmetric (D commutes
/// with U); otherwise a declared failure.
Outcome<LinearHhd> sde_to_hhd(const SdeDecomposition& s);

/// D = I, U = P, Q = -H P^{-1} for a strictly orthogonal decomposition with
/// invertible P. Fails when P is singular (condition estimate above 1e12).
Outcome<SdeDecomposition> hhd_to_sde(const LinearHhd& d);

/// Search for a skew-symmetric Q with Q P + H D = O (least squares over the
/// strictly upper triangular unknowns). Succeeds only when the residual is
/// within 1e-8 and D commutes with P.
Outcome<RealMatrix> equivalence_condition(const RealMatrix& dmat, const LinearHhd& d);

}  // namespace hhdkit
