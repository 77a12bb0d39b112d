#pragma once

#include <optional>
#include <vector>

#include "polyslice/bodies.hpp"

namespace polyslice {

enum class Classification { LocalMax, LocalMin, Saddle, Degenerate };
const char* to_string(Classification c);

// Section: the true A or P (closed form in regime, exact oracle otherwise).
// Kernel: the product function whose Lagrange system the critical point
// analysis solves, e.g. prod 1/(a_1-a_j) (a_1-t)^{n-2} for the simplex
// perimeter. Kernel and Section coincide (up to a constant) for volumes in
// the separating regime.
enum class Objective { Section, Kernel };
const char* to_string(Objective o);

struct ExtremaOptions {
  Objective objective = Objective::Section;
  double hessian_step = 1e-4;
  double gradient_step = 1e-6;
  double critical_tol = 1e-6;
};

struct CriticalPoint {
  explicit CriticalPoint(Direction d) : a(std::move(d)) {}
  Direction a;
  double lambda = 0;
  std::optional<double> mu;  // simplex only
  double apex = 0;
  std::vector<int> multiplicity;  // sizes of equal-coordinate groups after the apex
  Classification classification = Classification::Degenerate;
  // Positive means local max (same convention as second_order_coefficient).
  double second_order = 0;
  std::vector<double> hessian_eigenvalues;
  double residual = 0;
};

struct ThresholdReport {
  BodyKind body;
  int n;
  Functional functional;
  Objective objective;
  double analytic;
  double empirical;
  double gap;
  double lo, hi;  // scanned interval
};

// Objective values. Section values are total: 0 outside the body.
double objective_value(const Body& body, const Eigen::VectorXd& a, double t, Functional f, Objective o);
double log_objective(const Body& body, const Eigen::VectorXd& a, double t, Functional f, Objective o);

// Analytic gradient of the log kernel (NaN outside its domain).
Eigen::VectorXd log_kernel_gradient(const Body& body, const Eigen::VectorXd& a, double t, Functional f);

// Norm of the gradient component tangent to the constraint sphere, with the
// least-squares multipliers.
struct LagrangeFit {
  double residual;
  double lambda;
  std::optional<double> mu;
};
LagrangeFit lagrange_fit(const Body& body, const Eigen::VectorXd& a, const Eigen::VectorXd& grad);

std::vector<CriticalPoint> structured_critical_points(const Body& body, double t, Functional f);

double second_order_coefficient(const Body& body, double t, Functional f);

CriticalPoint classify(const Body& body, const Direction& a, double t, Functional f, const ExtremaOptions& opt = {});

// Mean eigenvalue of the FD Hessian of the log objective on the sphere.
double mean_curvature(const Body& body, const Direction& a, double t, Functional f, const ExtremaOptions& opt = {});

Direction canonicalize(const Direction& a);

struct MaximizeResult {
  Direction best;
  double value = 0;
  std::vector<Direction> finals;  // canonicalized end point of each restart
  std::vector<double> values;
};

MaximizeResult sphere_maximize(const Body& body, double t, Functional f, int restarts, Rng& rng,
                               const ExtremaOptions& opt = {});
std::pair<Direction, double> ascend_from(const Body& body, const Direction& start, double t, Functional f,
                                         const ExtremaOptions& opt = {});

// Default objective: Kernel for thresholds defined by second_order_coefficient,
// Section for the n = 3 cube perimeter switch 11 sqrt(3)/30.
ThresholdReport threshold_scan(BodyKind kind, Functional f, int n);
ThresholdReport threshold_scan(BodyKind kind, Functional f, int n, Objective o);

}  // namespace polyslice
