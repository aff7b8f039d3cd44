#pragma once

#include <optional>
#include <string>

#include "hhdkit/matrix_ops.hpp"

namespace hhdkit {

/// Decomposition of a matrix A = -P + H where P is symmetric,
/// tr(P) = -tr(A) and consequently tr(H) = 0. The induced vector-field
/// decomposition is A x = -grad V(x) + u(x) with V(x) = (1/2) x^T P x
/// and u(x) = H x.
struct LinearHhd {
    RealMatrix p;
    RealMatrix h;
    RealMatrix a;
};

/// Diagnostics attached to a linear decomposition.
struct RiccatiReport {
    double residual_norm = 0.0;       ///< max-abs of 2P^2 + A^T P + P A
    double trace_gap = 0.0;           ///< |tr(P) + tr(A)|
    double orthogonality_norm = 0.0;  ///< max-abs of P H + H^T P
    int iterations = 0;               ///< 0 for closed-form routes
};

struct SolverOptions {
    int max_iterations = 100;
    double tolerance = 1e-10;
    /// Custom starting point. Supplying one switches the solver to plain
    /// (unconstrained) Newton so that other solution branches of the
    /// Riccati equation can be explored; those may violate the trace
    /// condition and are then reported distinctly.
    std::optional<RealMatrix> seed;
    /// Skip the closed-form 2x2 and normal-matrix shortcuts.
    bool force_newton = false;
};

struct RiccatiSolve {
    enum class Status {
        Converged,       ///< strict HHD found (residual and trace both within tolerance)
        TraceViolation,  ///< a Riccati solution was found, but it is not an HHD
        NoConvergence,
    };
    Status status = Status::NoConvergence;
    std::optional<LinearHhd> hhd;         ///< set iff Converged
    std::optional<RealMatrix> riccati_p;  ///< set iff TraceViolation
    RiccatiReport report;
    std::string route;  ///< "2x2", "normal" or "newton"
    std::string message;
    bool ok() const { return status == Status::Converged; }
};

/// V(x) = (1/2) x^T P x with gradient P x.
struct QuadraticForm {
    RealMatrix p;
    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;
};

/// P = -(A + A^T)/2, H = (A - A^T)/2. Always a valid HHD; strictly
/// orthogonal exactly when A is normal.
LinearHhd symmetric_split(const RealMatrix& a);

/// 2 P^2 + A^T P + P A. Zero iff P solves the characterizing Riccati equation.
RealMatrix riccati_residual(const RealMatrix& a, const RealMatrix& p);

/// True iff max-abs entry of P H + H^T P <= tol.
bool is_strictly_orthogonal(const LinearHhd& d, double tol = kDefaultTol);

/// Closed-form strictly orthogonal HHD for a 2x2 matrix. Branches:
/// b - c = 0 gives P = -A; a + d = 0 gives P = 0; otherwise the generic
/// two-parameter formula applies and the result is unique.
LinearHhd solve_2x2(const RealMatrix& a);

/// Strictly orthogonal HHD of a square matrix, or a declared failure.
/// Route: closed form for n = 2, the symmetric split when A is normal,
/// otherwise a Newton iteration on R(P) = 2P^2 + A^T P + P A using the
/// Sylvester-type linearization (2P + A^T) D + D (2P + A) = -R(P).
RiccatiSolve solve_riccati(const RealMatrix& a, const SolverOptions& opts = {});

/// Decomposition of B = S A S^T by S P S^T and S H S^T for orthogonal S.
/// Preserves strict orthogonality. Throws if S is not orthogonal.
LinearHhd orthogonal_conjugate(const LinearHhd& d, const RealMatrix& s);

QuadraticForm lyapunov_candidate(const LinearHhd& d);

/// Orbital derivative of the candidate along the linear field:
/// (P x) . (A x). Equals -|P x|^2 when the decomposition is strictly
/// orthogonal.
double orbital_derivative_linear(const LinearHhd& d, const Vector& x);

/// Recompute the full diagnostic record for an existing decomposition.
RiccatiReport diagnose(const LinearHhd& d);

}  // namespace hhdkit
