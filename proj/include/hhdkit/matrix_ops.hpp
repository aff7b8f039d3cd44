#pragma once

#include <Eigen/Dense>

namespace hhdkit {

/// Dense row-major real matrix. All linear-field machinery works on these;
/// dimensions stay tiny (n <= ~10), so no sparse or blocked paths.
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Default absolute tolerance for structural predicates.
inline constexpr double kDefaultTol = 1e-9;

/// Matrix product with an explicit dimension check.
/// Throws std::invalid_argument on mismatch.
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);

/// True iff max |a_ij - a_ji| <= tol.
bool is_symmetric(const RealMatrix& a, double tol = kDefaultTol);

/// True iff max entry of |A^T A - A A^T| <= tol.
bool is_normal(const RealMatrix& a, double tol = kDefaultTol);

/// Sum of the diagonal.
double trace(const RealMatrix& a);

/// Max-abs entry (0 for empty matrices).
double max_abs(const RealMatrix& a);

/// True iff no entry is NaN or infinite.
bool all_finite(const RealMatrix& a);

RealMatrix identity(Eigen::Index n);

}  // namespace hhdkit
