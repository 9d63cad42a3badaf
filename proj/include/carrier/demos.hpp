#pragma once

// Desk-scale demonstrations: weighted norms of entire functions, the
// approximating sequence g_n = g f(z/n), mollifier splitting f = g1 f + g2 f,
// a one-variable dbar solver (Cauchy transform) and the weighted L2 estimate.

#include <carrier/weights.hpp>

#include <string>

namespace carrier {

struct EntireSample {
  std::string label;
  std::size_t dim = 1;
  std::function<Complex(const CVector&)> eval;
};

EntireSample zero_sample(std::size_t k);
/// exp(sum c_j z_j)
EntireSample exponential_sample(const std::vector<Complex>& c);
/// prod_j (sin(s z_j) / (s z_j))^power
EntireSample sinc_sample(std::size_t k, double s, int power = 1);

/// Uniform grid on [-x_half, x_half]^k x [-y_half, y_half]^k, `points` per axis.
struct NormGrid {
  double x_half = 10;
  double y_half = 10;
  std::size_t points = 81;
};

struct NormEstimate {
  double value = 0;
  /// sup: max of |f| e^{-sigma} on the grid boundary.
  /// L2: max of |f|^2 e^{-2 sigma} on the boundary times the box volume.
  double boundary = 0;
  std::size_t points = 0;
};

/// Grid max of |f| e^{-sigma}, with no boundary check.
NormEstimate sup_norm_scan(const EntireSample& f, const WeightParams& p, const NormGrid& grid);
/// As sup_norm_scan; throws BoundaryNotNegligible if boundary > tolerance * value.
NormEstimate sup_norm_estimate(const EntireSample& f, const WeightParams& p, const NormGrid& grid,
                               double tolerance = 1e-6);
/// Trapezoidal value of [int |f|^2 e^{-2 sigma}]^{1/2}; throws
/// BoundaryNotNegligible if boundary > tolerance * value^2.
NormEstimate l2_norm_estimate(const EntireSample& f, const WeightParams& p, const NormGrid& grid,
                              double tolerance = 1e-6);

/// min(A^{-1/alpha} - A'^{-1/alpha}, A^{-1} - A'^{-1})
double lemma2_eta(double big_a, double a_prime, double alpha);

struct Lemma2Params {
  double alpha = 2;
  double a = 2, b = 3;          // f in the space with constants (a, b) on W'
  double big_a = 1, big_b = 4;  // g in the spaces with constants (A, B)
  double a_prime = 2;           // A' > A for the decay factor
  Cone w = Cone::zero(1);
  Cone w_prime = Cone::zero(1);
  std::size_t n_max = 16;
  NormGrid grid{};
  /// pointwise convergence g_n -> g is measured on this compact grid
  NormGrid compact{2, 2, 21};
  double slack = 1e-9;
};

struct Lemma2Row {
  std::size_t n = 0;
  double lhs = 0;  // max of the three g_n norms
  double rhs = 0;  // |f| (|g|_W + |g|_W')
  double pointwise_gap = 0;
  bool passed = false;
};

struct Lemma2Report {
  std::vector<Lemma2Row> rows;
  double f_norm = 0, g_norm_w = 0, g_norm_w_prime = 0;
  double eta = 0;
  bool gap_nonincreasing = true;
  bool passed() const;
};

/// Throws PreconditionFailed unless f(0) = 1 and A' > A.
Lemma2Report lemma2_sequence(const EntireSample& g, const EntireSample& f, const Lemma2Params& p);

/// c exp(-1/(1 - |x/delta|^2)) on |x| < delta (Euclidean), unit mass. The
/// mass is a radial Gauss-Kronrod integral.
class Bump {
 public:
  Bump(std::size_t k, double delta);
  double operator()(const RealVector& x) const;
  RealVector gradient(const RealVector& x) const;
  double delta() const { return delta_; }
  std::size_t dim() const { return k_; }

 private:
  double raw(const RealVector& x) const;
  std::size_t k_;
  double delta_;
  double scale_ = 1;
};

struct SplittingInputs {
  Cone v = Cone::zero(1);
  Cone w = Cone::zero(1);
  /// closure of R^k minus W, together with 0
  Cone w_complement = Cone::zero(1);
  double delta = 0.5;
  double alpha = 2;
  double big_a = 1, big_b = 1;
  double eps = 1;
  EntireSample f;
  /// tensor midpoint nodes per axis for k >= 2
  std::size_t nodes = 64;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  double fd_step = 0.05;
  double tolerance = 1e-10;
};

struct SplitValues {
  double g1 = 0, g2 = 0;
  RealVector grad_g2;
};

struct DbarRefinement {
  std::vector<double> steps;
  std::vector<double> errors;  // max |FD dbar f1~ + f g2' / 2|
  std::vector<double> orders;
  double richardson_error = 0;
};

struct SplittingReport {
  InequalityCheck partition;  // |g1 + g2 - 1| <= tolerance
  InequalityCheck support;    // grad g2 != 0 only within delta of the boundary of W
  InequalityCheck near_w;     // sigma_W <= sigma_R^k + B delta on supp g2
  InequalityCheck off_v;      // sigma_W <= sigma^1_{V, eps, B~} + R on supp g1
  double theta = 0;           // delta_V(x) >= theta |x| on the complement of W
  double b_tilde = 0;
  double r = 0;
  std::optional<DbarRefinement> dbar;  // k = 1 only
  bool passed() const;
};

/// g1, g2 and grad g2 at x. Throws QuadratureBudgetExceeded.
SplitValues mollifier_parts(const SplittingInputs& in, const Bump& g0, const RealVector& x);

/// Throws PreconditionFailed (closures of V and the complement of W meet, or
/// bad parameters) or QuadratureBudgetExceeded.
SplittingReport mollifier_splitting(const SplittingInputs& in);

/// Compactly supported datum on C, vanishing outside disc(center, radius).
struct DbarDatum {
  std::string label;
  std::function<double(Complex)> eta;
  Complex center = 0;
  double radius = 0;
};

DbarDatum zero_datum();
/// Radial smooth step: 1 on |w - c| <= 1 - delta, 0 on |w - c| >= 1.
DbarDatum mollified_disc(double delta, Complex center = 0);

struct DbarOptions {
  std::size_t radial_nodes = 256;
  std::size_t angular_nodes = 256;
  std::size_t moments = 48;  // far-field series length
};

/// psi = (1/pi) int eta(w) / (z - w) dlambda(w), near field by polar
/// quadrature centered at z, far field (|z - c| >= 2 radius) by a moment series.
class CauchySolver {
 public:
  CauchySolver(DbarDatum eta, DbarOptions opts = {});
  Complex operator()(Complex z) const;
  Complex near_field(Complex z) const;
  /// (1/pi) int eta
  Complex total() const { return moments_.empty() ? Complex(0) : moments_[0] / M_PI; }
  const DbarDatum& datum() const { return eta_; }
  /// max |dbar psi - eta| by central differences over the points.
  double residual(const std::vector<Complex>& points, double step) const;

 private:
  DbarDatum eta_;
  DbarOptions opts_;
  std::vector<Complex> moments_;
};

std::vector<Complex> dbar_solve_1d(const DbarDatum& eta, const std::vector<Complex>& points,
                                   const DbarOptions& opts = {});

/// Points of a square grid of the given spacing inside disc(c, radius).
std::vector<Complex> disc_grid(Complex c, double radius, double spacing);

struct DbarStudy {
  double delta = 0;
  std::vector<std::size_t> levels;  // radial nodes; angular = radial
  std::vector<double> errors;       // max |psi - conj(z)| on |z| <= 1 - delta
  std::vector<double> orders;
  double residual = 0;  // finest level, over the grid on |z| <= 1.25
  double fd_step = 0;
  std::size_t points = 0;
  double min_order() const;
};

DbarStudy dbar_refinement_study(double delta, const std::vector<std::size_t>& levels,
                                double spacing = 0.1, double fd_step = 5e-4);

struct HormanderOptions {
  double half_width = 6;
  double spacing = 0.1;
  double slack = 1e-6;
  double residual_tolerance = 1e-3;
  DbarOptions quad{};
};

struct HormanderReport {
  std::string weight;
  double lhs = 0;  // 2 int |psi|^2 e^{-rho} (1 + |z|^2)^{-2}
  double rhs = 0;  // int |eta|^2 e^{-rho}
  double boundary_density = 0;
  double residual = 0;
  bool corrected = false;  // the entire correction was applied
  double lhs_corrected = 0;
  bool consistent = false;
};

/// Evaluates both sides on the box. When the plain Cauchy transform fails the
/// inequality, `correction` (if given) is subtracted: an entire function, so
/// dbar psi is unchanged. Throws ResidualTooLarge.
HormanderReport hormander_check(const CauchySolver& psi, const WeightEvaluator& rho,
                                const HormanderOptions& opts = {},
                                const std::function<Complex(Complex)>& correction = {});

/// total * (1 - E(z)) / z with E the sinc product behind the lattice weight:
/// removes the 1/z tail of psi up to E.
std::function<Complex(Complex)> sinc_tail_correction(const CauchySolver& psi, const GsOracle& gs);

}  // namespace carrier
