#include "hhdkit/matrix_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace hhdkit {

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: dimension mismatch (" +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " times " +
                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
    }
    return a * b;
}

bool is_symmetric(const RealMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return max_abs(RealMatrix(a - a.transpose())) <= tol;
}

bool is_normal(const RealMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    RealMatrix commutator = a.transpose() * a - a * a.transpose();
    return max_abs(commutator) <= tol;
}

double trace(const RealMatrix& a) {
    return a.trace();
}

double max_abs(const RealMatrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

bool all_finite(const RealMatrix& a) {
    return a.allFinite();
}

RealMatrix identity(Eigen::Index n) {
    return RealMatrix::Identity(n, n);
}

}  // namespace hhdkit
