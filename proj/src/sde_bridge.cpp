#include "hhdkit/sde_bridge.hpp"

#include <cmath>
#include <stdexcept>

namespace hhdkit {

namespace {

constexpr double kResidualAccept = 1e-8;
constexpr double kConditionCutoff = 1e12;

double condition_estimate(const RealMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

}  // namespace

std::string validate_sde(const SdeDecomposition& s, double tol) {
    if (s.d.rows() != s.d.cols() || s.d.rows() != s.q.rows() || s.d.rows() != s.u.rows() ||
        s.d.rows() != s.f.rows()) {
        return "inconsistent dimensions";
    }
    if (!is_symmetric(s.d, tol)) return "D is not symmetric";
    if (!is_symmetric(s.u, tol)) return "U is not symmetric";
    if (max_abs(RealMatrix(s.q + s.q.transpose())) > tol) return "Q is not skew-symmetric";
    if (max_abs(RealMatrix(s.f + (s.d + s.q) * s.u)) > tol) return "F != -(D + Q) U";
    return {};
}

Outcome<LinearHhd> sde_to_hhd(const SdeDecomposition& s) {
    if (auto why = validate_sde(s); !why.empty()) {
        throw std::invalid_argument("sde_to_hhd: " + why);
    }
    RealMatrix du = s.d * s.u;
    if (!is_symmetric(du, kDefaultTol)) {
        return Outcome<LinearHhd>::failure("D U is not symmetric (D does not commute with U)");
    }
    LinearHhd out;
    out.p = du;
    out.h = -s.q * s.u;
    out.a = s.f;
    return Outcome<LinearHhd>::success(std::move(out));
}

Outcome<SdeDecomposition> hhd_to_sde(const LinearHhd& d) {
    if (!is_strictly_orthogonal(d, 1e-8)) {
        throw std::invalid_argument("hhd_to_sde: decomposition is not strictly orthogonal");
    }
    const Eigen::Index n = d.p.rows();
    if (condition_estimate(d.p) > kConditionCutoff) {
        return Outcome<SdeDecomposition>::failure("gradient part P is singular");
    }
    SdeDecomposition out;
    out.d = RealMatrix::Identity(n, n);
    out.u = d.p;
    out.q = -d.h * d.p.inverse();
    out.f = d.a;
    // skewness is guaranteed by P H + H^T P = O; check it rather than assume
    if (max_abs(RealMatrix(out.q + out.q.transpose())) > kResidualAccept) {
        return Outcome<SdeDecomposition>::failure("-H P^{-1} failed the skew-symmetry check");
    }
    return Outcome<SdeDecomposition>::success(std::move(out));
}

Outcome<RealMatrix> equivalence_condition(const RealMatrix& dmat, const LinearHhd& d) {
    const Eigen::Index n = d.p.rows();
    if (dmat.rows() != n || dmat.cols() != n) {
        throw std::invalid_argument("equivalence_condition: dimension mismatch");
    }
    if (!is_symmetric(dmat, kDefaultTol)) {
        throw std::invalid_argument("equivalence_condition: D must be symmetric");
    }
    if (condition_estimate(dmat) > kConditionCutoff) {
        throw std::invalid_argument("equivalence_condition: D must be regular");
    }
    if (max_abs(RealMatrix(dmat * d.p - d.p * dmat)) > kResidualAccept) {
        return Outcome<RealMatrix>::failure("D does not commute with P");
    }

    // Q P + H D = O, linear in the n(n-1)/2 strictly upper unknowns of Q.
    const Eigen::Index unknowns = n * (n - 1) / 2;
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n * n, unknowns);
    RealMatrix hd = d.h * dmat;
    Eigen::VectorXd rhs(n * n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) rhs(r * n + c) = -hd(r, c);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j, ++col) {
            // Q = q_ij (E_ij - E_ji): (Q P)_{rc} = q_ij (delta_ri P_jc - delta_rj P_ic)
            for (Eigen::Index c = 0; c < n; ++c) {
                sys(i * n + c, col) += d.p(j, c);
                sys(j * n + c, col) -= d.p(i, c);
            }
        }
    }
    Eigen::VectorXd q_upper = sys.colPivHouseholderQr().solve(rhs);
    RealMatrix q = RealMatrix::Zero(n, n);
    col = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j, ++col) {
            q(i, j) = q_upper(col);
            q(j, i) = -q_upper(col);
        }
    }
    const double residual = max_abs(RealMatrix(q * d.p + hd));
    if (residual > kResidualAccept) {
        return Outcome<RealMatrix>::failure(
            "no skew-symmetric Q satisfies Q P + H D = O (best residual " +
            std::to_string(residual) + ")");
    }
    return Outcome<RealMatrix>::success(std::move(q));
}

}  // namespace hhdkit
