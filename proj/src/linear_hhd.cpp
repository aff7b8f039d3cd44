#include "hhdkit/linear_hhd.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace hhdkit {

namespace {

// Basis of the symmetric trace-free matrices: E_ii - E_{i+1,i+1} plus the
// symmetrized off-diagonal units. Dimension n(n+1)/2 - 1.
std::vector<RealMatrix> symmetric_tracefree_basis(Eigen::Index n) {
    std::vector<RealMatrix> basis;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        RealMatrix b = RealMatrix::Zero(n, n);
        b(i, i) = 1.0;
        b(i + 1, i + 1) = -1.0;
        basis.push_back(std::move(b));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            RealMatrix b = RealMatrix::Zero(n, n);
            b(i, j) = 1.0;
            b(j, i) = 1.0;
            basis.push_back(std::move(b));
        }
    }
    return basis;
}

std::vector<double> real_roots_cubic(double c0, double c1, double c2, double c3) {
    // roots of c0 + c1 t + c2 t^2 + c3 t^3, degenerating gracefully
    std::vector<double> roots;
    const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2), std::abs(c3), 1.0});
    if (std::abs(c3) > 1e-14 * scale) {
        Eigen::Matrix3d companion;
        companion << 0, 0, -c0 / c3,
                     1, 0, -c1 / c3,
                     0, 1, -c2 / c3;
        Eigen::EigenSolver<Eigen::Matrix3d> es(companion, false);
        for (int i = 0; i < 3; ++i) {
            auto ev = es.eigenvalues()(i);
            if (std::abs(ev.imag()) < 1e-9 * (1.0 + std::abs(ev.real()))) roots.push_back(ev.real());
        }
    } else if (std::abs(c2) > 1e-14 * scale) {
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
            roots.push_back((-c1 + std::sqrt(disc)) / (2.0 * c2));
            roots.push_back((-c1 - std::sqrt(disc)) / (2.0 * c2));
        }
    } else if (std::abs(c1) > 1e-14 * scale) {
        roots.push_back(-c0 / c1);
    }
    return roots;
}

// R(P + tD) = R + t L(D) + t^2 (2 D^2); the squared Frobenius norm of that
// is a quartic in t, minimized exactly over (0, 1].
double exact_line_search(const RealMatrix& r, const RealMatrix& ld, const RealMatrix& s) {
    const double a0 = r.squaredNorm();
    const double a1 = 2.0 * (r.cwiseProduct(ld)).sum();
    const double a2 = 2.0 * (r.cwiseProduct(s)).sum() + ld.squaredNorm();
    const double a3 = 2.0 * (ld.cwiseProduct(s)).sum();
    const double a4 = s.squaredNorm();
    auto phi = [&](double t) { return a0 + t * (a1 + t * (a2 + t * (a3 + t * a4))); };
    double best_t = 1.0;
    double best = phi(1.0);
    for (double t : real_roots_cubic(a1, 2.0 * a2, 3.0 * a3, 4.0 * a4)) {
        if (t > 1e-12 && t <= 1.0 && phi(t) < best) {
            best = phi(t);
            best_t = t;
        }
    }
    return best_t;
}

// Plain Newton on R(P) with the Sylvester linearization solved through its
// n^2 x n^2 Kronecker form; iterates symmetrized, trace not constrained.
// Used for user-supplied seeds so other solution branches stay reachable.
bool newton_unconstrained(const RealMatrix& a, RealMatrix& p, const SolverOptions& opts,
                          int& iterations) {
    const Eigen::Index n = a.rows();
    for (iterations = 0; iterations < opts.max_iterations; ++iterations) {
        RealMatrix r = riccati_residual(a, p);
        if (max_abs(r) <= opts.tolerance) return true;
        RealMatrix m = 2.0 * p + a.transpose();
        RealMatrix nn = 2.0 * p + a;
        Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n * n, n * n);
        Eigen::VectorXd rhs(n * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const Eigen::Index row = i * n + j;
                rhs(row) = -r(i, j);
                for (Eigen::Index k = 0; k < n; ++k) {
                    sys(row, k * n + j) += m(i, k);
                    sys(row, i * n + k) += nn(k, j);
                }
            }
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys);
        if (qr.rank() < n * n) return false;
        Eigen::VectorXd dvec = qr.solve(rhs);
        RealMatrix d(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) d(i, j) = dvec(i * n + j);
        p = p + d;
        p = 0.5 * (p + p.transpose());
    }
    return max_abs(riccati_residual(a, p)) <= opts.tolerance;
}

// Gauss-Newton restricted to the affine slice tr(P) = tr(seed): the step is
// the least-squares solution of the Sylvester linearization over symmetric
// trace-free directions, followed by an exact polynomial line search.
// Deterministic jitter restarts recover from stationary points of |R|^2
// that are not roots.
bool newton_trace_slice(const RealMatrix& a, RealMatrix& p, const SolverOptions& opts,
                        int& iterations) {
    const Eigen::Index n = a.rows();
    const auto basis = symmetric_tracefree_basis(n);
    const Eigen::Index dof = static_cast<Eigen::Index>(basis.size());
    std::mt19937 rng(0x48d5u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int restarts = 0;
    for (iterations = 0; iterations < opts.max_iterations; ++iterations) {
        RealMatrix r = riccati_residual(a, p);
        if (max_abs(r) <= opts.tolerance) return true;
        RealMatrix m = 2.0 * p + a.transpose();
        Eigen::MatrixXd sys(n * n, dof);
        for (Eigen::Index k = 0; k < dof; ++k) {
            RealMatrix col = m * basis[k] + basis[k] * m.transpose();
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) sys(i * n + j, k) = col(i, j);
        }
        Eigen::VectorXd rhs(n * n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) rhs(i * n + j) = -r(i, j);
        Eigen::VectorXd coef = sys.colPivHouseholderQr().solve(rhs);
        RealMatrix d = RealMatrix::Zero(n, n);
        for (Eigen::Index k = 0; k < dof; ++k) d += coef(k) * basis[k];
        RealMatrix ld = m * d + d * m.transpose();
        RealMatrix s = 2.0 * d * d;
        const double t = exact_line_search(r, ld, s);
        RealMatrix next = p + t * d;
        RealMatrix rnext = riccati_residual(a, next);
        if (rnext.squaredNorm() > r.squaredNorm() * (1.0 - 1e-9)) {
            // stalled; jitter within the slice and try again
            if (++restarts > 4) return false;
            RealMatrix jitter = RealMatrix::Zero(n, n);
            for (Eigen::Index k = 0; k < dof; ++k) jitter += gauss(rng) * basis[k];
            const double jn = jitter.norm();
            if (jn > 0.0) p += (0.5 * p.norm() + 0.2) / jn * jitter;
            continue;
        }
        p = next;
    }
    return max_abs(riccati_residual(a, p)) <= opts.tolerance;
}

void require_square(const RealMatrix& a, const char* who) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
}

}  // namespace

double QuadraticForm::value(const Vector& x) const {
    return 0.5 * x.dot(p * x);
}

Vector QuadraticForm::gradient(const Vector& x) const {
    return p * x;
}

LinearHhd symmetric_split(const RealMatrix& a) {
    require_square(a, "symmetric_split");
    LinearHhd d;
    d.a = a;
    d.p = -0.5 * (a + a.transpose());
    d.h = 0.5 * (a - a.transpose());
    return d;
}

RealMatrix riccati_residual(const RealMatrix& a, const RealMatrix& p) {
    if (a.rows() != p.rows() || a.cols() != p.cols()) {
        throw std::invalid_argument("riccati_residual: dimension mismatch");
    }
    return 2.0 * p * p + a.transpose() * p + p * a;
}

bool is_strictly_orthogonal(const LinearHhd& d, double tol) {
    RealMatrix cross = d.p * d.h + d.h.transpose() * d.p;
    return max_abs(cross) <= tol;
}

LinearHhd solve_2x2(const RealMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("solve_2x2: matrix must be 2x2");
    const double aa = a(0, 0), bb = a(0, 1), cc = a(1, 0), dd = a(1, 1);
    const double tr = aa + dd;
    const double skew = bb - cc;
    LinearHhd d;
    d.a = a;
    if (std::abs(skew) <= kDefaultTol) {
        d.p = -a;
        d.h = RealMatrix::Zero(2, 2);
        return d;
    }
    if (std::abs(tr) <= kDefaultTol) {
        d.p = RealMatrix::Zero(2, 2);
        d.h = a;
        return d;
    }
    const double den = tr * tr + skew * skew;
    const double alpha = tr / den * (aa * tr - cc * skew);
    const double beta = tr / den * (cc * tr + aa * skew);
    d.p = RealMatrix(2, 2);
    d.p << -alpha, -beta, -beta, -(tr - alpha);
    d.h = a + d.p;
    return d;
}

RiccatiSolve solve_riccati(const RealMatrix& a, const SolverOptions& opts) {
    require_square(a, "solve_riccati");
    const Eigen::Index n = a.rows();
    RiccatiSolve out;

    auto finish_converged = [&](LinearHhd d, const std::string& route, int iterations) {
        out.report = diagnose(d);
        out.report.iterations = iterations;
        if (out.report.residual_norm <= opts.tolerance && out.report.trace_gap <= opts.tolerance) {
            out.status = RiccatiSolve::Status::Converged;
            out.hhd = std::move(d);
            out.route = route;
            return true;
        }
        return false;
    };

    if (!opts.seed && !opts.force_newton) {
        if (n == 2) {
            if (finish_converged(solve_2x2(a), "2x2", 0)) return out;
        }
        if (is_normal(a, kDefaultTol)) {
            if (finish_converged(symmetric_split(a), "normal", 0)) return out;
        }
    }

    const bool explore = opts.seed.has_value();
    RealMatrix p;
    if (explore) {
        if (opts.seed->rows() != n || opts.seed->cols() != n) {
            throw std::invalid_argument("solve_riccati: seed dimension mismatch");
        }
        p = 0.5 * (*opts.seed + opts.seed->transpose());
    } else {
        p = -0.5 * (a + a.transpose());
    }

    int iterations = 0;
    const bool converged = explore ? newton_unconstrained(a, p, opts, iterations)
                                   : newton_trace_slice(a, p, opts, iterations);
    out.route = "newton";
    if (!converged) {
        out.status = RiccatiSolve::Status::NoConvergence;
        LinearHhd trial{p, a + p, a};
        out.report = diagnose(trial);
        out.report.iterations = iterations;
        out.message = "newton iteration did not reach the residual tolerance";
        return out;
    }

    LinearHhd d{p, a + p, a};
    out.report = diagnose(d);
    out.report.iterations = iterations;
    if (out.report.trace_gap <= opts.tolerance) {
        out.status = RiccatiSolve::Status::Converged;
        out.hhd = std::move(d);
    } else {
        // a genuine solution of the Riccati equation that is not an HHD
        out.status = RiccatiSolve::Status::TraceViolation;
        out.riccati_p = p;
        out.message = "converged to a Riccati solution violating tr(P) = -tr(A)";
    }
    return out;
}

LinearHhd orthogonal_conjugate(const LinearHhd& d, const RealMatrix& s) {
    require_square(s, "orthogonal_conjugate");
    RealMatrix gram = s.transpose() * s;
    if (max_abs(RealMatrix(gram - RealMatrix::Identity(s.rows(), s.cols()))) > kDefaultTol) {
        throw std::invalid_argument("orthogonal_conjugate: matrix is not orthogonal");
    }
    LinearHhd out;
    out.p = s * d.p * s.transpose();
    out.h = s * d.h * s.transpose();
    out.a = s * d.a * s.transpose();
    return out;
}

QuadraticForm lyapunov_candidate(const LinearHhd& d) {
    return QuadraticForm{d.p};
}

double orbital_derivative_linear(const LinearHhd& d, const Vector& x) {
    Vector grad = d.p * x;
    Vector field = d.a * x;
    return grad.dot(field);
}

RiccatiReport diagnose(const LinearHhd& d) {
    RiccatiReport rep;
    rep.residual_norm = max_abs(riccati_residual(d.a, d.p));
    rep.trace_gap = std::abs(trace(d.p) + trace(d.a));
    rep.orthogonality_norm = max_abs(RealMatrix(d.p * d.h + d.h.transpose() * d.p));
    rep.iterations = 0;
    return rep;
}

}  // namespace hhdkit
