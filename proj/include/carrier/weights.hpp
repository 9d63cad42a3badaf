#pragma once

// Subharmonic and plurisubharmonic weights on C^k: Theta = log|sin z / z|,
// the profile mu, the one-variable weight Psi, the surrogate Phi-hat, a
// lattice-sum Gelfand-Shilov weight, their combination rho, and a numerical
// sub-mean-value tester.

#include <carrier/cone.hpp>

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>

namespace carrier {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

RealVector real_part(const CVector& z);
RealVector imag_part(const CVector& z);

/// log|sin z / z|; 0 at z = 0, -inf at real z within a few ulps of n*pi, n != 0.
double theta(Complex z);
/// Theta(t) on [0, pi/2], -log t beyond.
double mu(double t);

struct WeightParams {
  double alpha = 1;
  double a = 1;
  double b = 1;
  Cone u = Cone::whole(1);
};

/// -|x/A|^{1/alpha} + delta_U(Bx) + |By|. Throws PreconditionFailed on bad
/// parameters.
double sigma_weight(const WeightParams& p, const CVector& z);

/// A weight together with the constants of the bounds it claims.
struct WeightEvaluator {
  std::string label;
  std::function<double(const CVector&)> eval;
  std::map<std::string, double> constants;
};

/// One inequality lhs <= rhs checked on samples. A sample passes when
/// lhs <= rhs + slack * (1 + |lhs| + |rhs|); lhs = -inf always passes.
struct InequalityCheck {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  /// min over samples of rhs - lhs (finite samples only).
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<std::vector<double>> witness;
  bool passed() const { return failures == 0; }
  void record(double lhs, double rhs, double slack, const std::vector<double>& point);
};

struct Lemma4Report {
  InequalityCheck lower;      // Theta(x+iy) >= Theta(x)
  InequalityCheck upper;      // Theta(x+iy) <= Theta(x) + |y|, |x| <= 3pi/4
  InequalityCheck auxiliary;  // the exponential inequality behind the upper bound
  InequalityCheck mu_lower;   // Theta(x+iy) >= mu(|x|), |x| <= pi/2
  InequalityCheck mu_upper;   // Theta(x+iy) <= mu(|x|) + |y|
  std::size_t grid = 0;
  bool decreasing = true;
  std::optional<double> decrease_witness;
  bool passed() const;
};

Lemma4Report verify_lemma4(std::size_t samples, std::size_t grid, std::uint64_t seed,
                           double slack = 1e-12);

class Psi {
 public:
  double operator()(Complex z) const;
  double a, b, kappa;
  double h;       // t(b)
  double lambda;  // sup of mu-tilde(x)/x on [a, b]
  double x0;
  double r;       // pi / (2 lambda (b + kappa))
  double strip_bound;  // Psi >= -strip_bound on |Re z| <= kappa
  double t_scale() const;
  double mu_tilde(double x) const;
};

/// Throws PreconditionFailed (bad a, b, kappa) or MaximizationFailed.
Psi build_psi(double a, double b, double kappa);

struct PsiReport {
  InequalityCheck upper;  // Psi(x+iy) <= x chi(x) + R|y|
  InequalityCheck lower;  // Psi(x0+iy) >= x0
  InequalityCheck strip;  // Psi >= -strip_bound on the strip
  bool passed() const { return upper.passed() && lower.passed() && strip.passed(); }
};

PsiReport verify_psi(const Psi& psi, std::size_t samples, std::uint64_t seed, double slack);

struct PhiOptions {
  std::size_t xi_samples = 6;
  std::size_t s_points = 24;
  double s_min = 1e-2;
  double s_max = 1e3;
  std::uint64_t seed = 1;
};

class Phi {
 public:
  /// Finite max of s Phi_{xi,tau}(z/s) over the fixed (xi, s) sample grid.
  double pure(const CVector& z) const;
  /// pure(z) together with the proof's witnesses at z: xi = x/l(x),
  /// s = l(x)/x0 when x is in K, and s = |x|_xi for one xi in Q.
  double injected(const CVector& z) const;

  std::size_t dim() const { return k_; }
  const Vector& functional() const { return l_; }
  const Cone& cone() const { return *cone_; }
  bool trivial() const { return trivial_; }

  double r = 0, r_prime = 0, tau = 0, m = 0, big_m = 0, d = 0, lambda_k = 0, h_tau = 0;
  std::optional<Psi> psi;

 private:
  friend Phi build_phi(const Cone&, const Cone&, const Vector&, const Rational&, const Rational&,
                       double, const PhiOptions&);
  double term(const RealVector& xi, double s, const CVector& z) const;
  double dual_norm(const RealVector& xi, const RealVector& x) const;

  std::size_t k_ = 0;
  std::size_t pivot_ = 0;
  bool trivial_ = false;
  Vector l_;
  RealVector lr_;
  std::optional<Cone> cone_;
  std::vector<RealVector> xis_;
  std::vector<double> ss_;
};

/// `outside` is the closure of (R^k minus V) together with 0. Throws
/// PreconditionFailed (l not positive on K) or NotANeighborhood.
Phi build_phi(const Cone& k, const Cone& outside, const Vector& l, const Rational& a,
              const Rational& b, double tau_request, const PhiOptions& opts = {});

struct PhiReport {
  InequalityCheck lower;    // -r'|x| <= Phi
  InequalityCheck upper;    // Phi <= max(l(x), 0) + r|y|
  InequalityCheck outside;  // Phi <= r|y| off V
  InequalityCheck on_cone;  // Phi >= l(x) on K
  bool passed() const;
};

PhiReport verify_phi(const Phi& phi, const Cone& outside, std::size_t samples, std::uint64_t seed,
                     double slack);

/// sigma(z) = sum_j sum_{n<=N} max(Theta(c z_j / n^alpha), -1), normalized
/// to (sigma - c_up) / beta_up. On |x| <= box:
///   -gamma |x|^{1/alpha} - h <= normalized <= -|x|^{1/alpha} + big_b |y|.
class GsOracle {
 public:
  double raw(const CVector& z) const;
  double operator()(const CVector& z) const;

  std::size_t k = 1;
  double alpha = 2, c = 1, box = 50;
  std::size_t terms = 0;
  double beta_up = 0, c_up = 0;
  double big_b = 0;  // normalized |y| coefficient
  double gamma = 0;  // normalized decay coefficient of the lower bound
  double h = 0;      // normalized lower constant
  std::size_t grid = 0;
};

GsOracle build_gs_oracle(std::size_t k, double alpha, double c = 1, double box = 50,
                         std::size_t terms = 0);

struct GsReport {
  InequalityCheck upper;
  InequalityCheck lower;
  InequalityCheck real_axis;  // sigma(x+iy) >= sigma(x)
  bool passed() const { return upper.passed() && lower.passed() && real_axis.passed(); }
};

GsReport verify_gs_oracle(const GsOracle& s, std::size_t samples, std::uint64_t seed, double slack);

struct RhoInputs {
  double alpha = 2;
  Cone u = Cone::zero(1);
  Cone k1 = Cone::zero(1);
  Cone k2 = Cone::zero(1);
  Rational kappa = 1;
  Rational d = 1;
  Rational a = 1;
  Rational b = 2;
  double tau_request = 0;
  double box = 20;
  PhiOptions phi{};
};

class Rho {
 public:
  double operator()(const CVector& z) const;

  // eps-neighborhoods of K1 and K2 with closures meeting only at 0
  Cone v1 = Cone::zero(1), v2 = Cone::zero(1);
  Rational eps;
  Vector l;
  double l_norm = 0;  // sup of |l| on the unit sphere (the l1 norm)
  double theta1 = 0;  // delta_{K1}(x) >= theta1 |x| off V1
  double theta2 = 0;  // delta_{K2}(x) >= theta2 |x| off V2
  double b = 0, h = 0, gamma = 0;
  std::optional<Phi> phi;
  std::optional<GsOracle> sigma;
};

/// Throws PreconditionFailed, NotProper or ConesIntersect.
Rho build_rho(const RhoInputs& in);

struct RhoReport {
  InequalityCheck to_u;       // rho <= -|x|^{1/alpha} + b delta_U + b|y|
  InequalityCheck to_k1;      // rho <= -kappa|x| + b delta_K1 + b|y|
  InequalityCheck near_k2;    // rho >= -gamma |x|^{1/alpha} - H on K2^d
  InequalityCheck in_v1;      // rho <= -kappa|x| + (r + B)|y| on V1
  InequalityCheck l_vs_u;     // max(-l(x), 0) <= b delta_U(x)
  bool passed() const;
};

RhoReport verify_rho(const Rho& rho, const RhoInputs& in, std::size_t samples, std::uint64_t seed,
                     double slack);

struct PshOptions {
  std::size_t nodes = 256;
  std::size_t max_nodes = 65536;
  double tolerance = 1e-8;
};

struct PshViolation {
  CVector center;
  CVector direction;
  double radius = 0;
  double value = 0;
  double mean = 0;
};

struct PshReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t max_nodes_used = 0;
  std::vector<PshViolation> violations;  // the first few
  bool passed() const { return failures == 0; }
};

/// w(z0) <= mean of w over {z0 + r e^{it} u} (trapezoidal rule, node count
/// doubled on apparent failure up to max_nodes) + tolerance.
PshReport check_plurisubharmonic(const std::function<double(const CVector&)>& w,
                                 const std::vector<CVector>& centers,
                                 const std::vector<CVector>& directions,
                                 const std::vector<double>& radii, const PshOptions& opts = {});

}  // namespace carrier
