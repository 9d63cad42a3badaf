#include <carrier/errors.hpp>
#include <carrier/weights.hpp>

#include <cfloat>
#include <cmath>
#include <random>

namespace carrier {

RealVector real_part(const CVector& z) {
  RealVector x;
  for (const auto& v : z) x.push_back(v.real());
  return x;
}

RealVector imag_part(const CVector& z) {
  RealVector y;
  for (const auto& v : z) y.push_back(v.imag());
  return y;
}

double theta(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double ay = std::fabs(y);
  if (std::hypot(x, y) < 0.5) {
    // sin z / z = 1 + u
    const Complex z2 = z * z;
    Complex u = 0;
    Complex term = 1;
    double fact = 1;
    for (int n = 1; n <= 7; ++n) {
      term *= -z2;
      fact *= (2.0 * n) * (2.0 * n + 1);
      u += term / fact;
    }
    return 0.5 * std::log1p(2 * u.real() + std::norm(u));
  }
  if (y == 0) {
    const double s = std::sin(x);
    if (std::fabs(s) <= 4 * DBL_EPSILON * std::fabs(x)) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(s) / std::fabs(x));
  }
  const double log_r = std::log(std::hypot(x, y));
  if (ay <= 20) {
    const double s = std::sin(x);
    const double sh = std::sinh(ay);
    return 0.5 * std::log(s * s + sh * sh) - log_r;
  }
  // sin^2 x + sinh^2 y = e^{2|y|}/4 (1 + e^{-4|y|} - 2 cos 2x e^{-2|y|})
  const double e2 = std::exp(-2 * ay);
  const double log_num = 2 * ay - std::log(4.0) + std::log1p(e2 * e2 - 2 * std::cos(2 * x) * e2);
  return 0.5 * log_num - log_r;
}

double mu(double t) {
  t = std::fabs(t);
  return t <= M_PI / 2 ? theta(t) : -std::log(t);
}

double sigma_weight(const WeightParams& p, const CVector& z) {
  if (!(p.alpha >= 1) || !(p.a > 0) || !(p.b > 0))
    throw PreconditionFailed("weight parameters need alpha >= 1 and A, B > 0");
  if (z.size() != p.u.dim()) throw DimensionMismatch("point and cone dimensions differ");
  auto x = real_part(z);
  const auto y = imag_part(z);
  const double decay = std::pow(sup_norm(x) / p.a, 1 / p.alpha);
  for (auto& v : x) v *= p.b;
  return -decay + p.u.distance(x) + p.b * sup_norm(y);
}

void InequalityCheck::record(double lhs, double rhs, double slack, const std::vector<double>& point) {
  ++samples;
  if (lhs == -std::numeric_limits<double>::infinity()) return;
  const bool bad = std::isnan(lhs) || std::isnan(rhs) ||
                   lhs > rhs + slack * (1 + std::fabs(lhs) + std::fabs(rhs));
  if (std::isfinite(rhs) && std::isfinite(lhs)) worst_margin = std::min(worst_margin, rhs - lhs);
  if (bad) {
    ++failures;
    if (!witness) witness = point;
  }
}

bool Lemma4Report::passed() const {
  return lower.passed() && upper.passed() && auxiliary.passed() && mu_lower.passed() &&
         mu_upper.passed() && decreasing;
}

Lemma4Report verify_lemma4(std::size_t samples, std::size_t grid, std::uint64_t seed, double slack) {
  Lemma4Report rep;
  rep.lower.name = "Theta(x+iy) >= Theta(x)";
  rep.upper.name = "Theta(x+iy) <= Theta(x) + |y|, |x| <= 3pi/4";
  rep.auxiliary.name = "cos2x (1-e^{-2|y|})/2 - (1-e^{-4|y|})/4 <= (sin x / x)^2 y^2, |x| <= 3pi/4";
  rep.mu_lower.name = "Theta(x+iy) >= mu(|x|), |x| <= pi/2";
  rep.mu_upper.name = "Theta(x+iy) <= mu(|x|) + |y|";

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wide(-3 * M_PI, 3 * M_PI);
  std::uniform_real_distribution<double> inner(-0.75 * M_PI, 0.75 * M_PI);
  std::uniform_real_distribution<double> half(-0.5 * M_PI, 0.5 * M_PI);
  std::uniform_real_distribution<double> far(-20, 20);
  std::uniform_real_distribution<double> ys(-10, 10);

  rep.lower.record(theta(0), theta(0), slack, {0, 0});
  rep.lower.record(theta(M_PI), theta(M_PI), slack, {M_PI, 0});
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = wide(rng), y = ys(rng);
    rep.lower.record(theta(x), theta({x, y}), slack, {x, y});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = inner(rng), y = ys(rng);
    rep.upper.record(theta({x, y}), theta(x) + std::fabs(y), slack, {x, y});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = inner(rng), y = ys(rng);
    const double ay = std::fabs(y);
    const double lhs = std::cos(2 * x) * (-std::expm1(-2 * ay)) / 2 - (-std::expm1(-4 * ay)) / 4;
    const double sinc = x == 0 ? 1.0 : std::sin(x) / x;
    rep.auxiliary.record(lhs, sinc * sinc * y * y, slack, {x, y});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = half(rng), y = ys(rng);
    rep.mu_lower.record(mu(x), theta({x, y}), slack, {x, y});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = far(rng), y = ys(rng);
    rep.mu_upper.record(theta({x, y}), mu(x) + std::fabs(y), slack, {x, y});
  }

  rep.grid = grid;
  double prev = theta(0);
  for (std::size_t i = 1; i < grid; ++i) {
    const double x = i + 1 == grid ? M_PI : M_PI * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double t = theta(x);
    if (!(t < prev)) {
      rep.decreasing = false;
      if (!rep.decrease_witness) rep.decrease_witness = x;
    }
    prev = t;
  }
  return rep;
}

}  // namespace carrier
