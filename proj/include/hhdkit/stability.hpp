#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hhdkit/linear_hhd.hpp"

namespace hhdkit {

struct GridSpec {
    double xmin, xmax, ymin, ymax;
    int nx, ny;
};

struct Point2 {
    double x, y;
};

struct Polyline {
    std::vector<Point2> points;
};

struct LevelContours {
    double level;
    std::vector<Polyline> lines;
};

/// Van der Pol case study state: the linearization decomposition at the
/// origin and the derived quantities used by the strip estimate.
struct VdpCaseStudy {
    double mu;
    RealMatrix p;      ///< P of the closed-form 2x2 decomposition at parameter mu
    QuadraticForm w;   ///< W(x) = (1/2) x^T P x
    double c0;         ///< sqrt((1 + mu^2)/(2 + mu^2))
    GridSpec grid;
};

VdpCaseStudy make_vdp_case_study(double mu, const GridSpec& grid);

/// Van der Pol vector field (y, mu (1 - x^2) y - x).
Eigen::Vector2d vdp_field(double mu, const Eigen::Vector2d& x);

/// The boundary curve of the region where W-level-set analysis applies;
/// satisfies Wdot(x, gamma(x)) = 0. Defined for x > c0 with nonnegative
/// radicand; throws std::domain_error outside.
double gamma_curve(double mu, double x);

/// y = x / (mu (1 - x^2)); throws std::domain_error at the poles x = +-1
/// and for mu = 0.
double y_nullcline(double mu, double x);

/// (y_nullcline(x), gamma_curve(x)) for mu > 0, x > 1; the pair brackets the
/// singular orbit. Throws when the ordering or preconditions fail.
std::pair<double, double> strip_bounds(double mu, double x);

using PlanarField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// grad W(x) . field(x).
double orbital_derivative_field(const QuadraticForm& w, const PlanarField& field,
                                const Eigen::Vector2d& x);

/// Marching-squares contour extraction on a uniform grid, one Newton
/// refinement step per emitted vertex. Deterministic for a fixed grid.
std::vector<LevelContours> sample_level_sets(const QuadraticForm& w,
                                             const std::vector<double>& levels,
                                             const GridSpec& grid);

}  // namespace hhdkit
