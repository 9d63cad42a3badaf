#include <carrier/errors.hpp>
#include <carrier/weights.hpp>

#include <cmath>
#include <random>

namespace carrier {

double Psi::t_scale() const { return M_PI / (2 * (b + kappa)); }

double Psi::mu_tilde(double x) const { return mu(t_scale() * (x - (b + a) / 2)) - mu(h); }

double Psi::operator()(Complex z) const {
  const Complex t = t_scale() * (z - (b + a) / 2);
  return (theta(t) - mu(h)) / lambda;
}

namespace {

constexpr double kGolden = 0.6180339887498949;

}  // namespace

Psi build_psi(double a, double b, double kappa) {
  if (!(a > 0) || !(b > a) || !(kappa > 0))
    throw PreconditionFailed("Psi needs 0 < a < b and kappa > 0");
  Psi p{};
  p.a = a;
  p.b = b;
  p.kappa = kappa;
  p.h = p.t_scale() * (b - a) / 2;
  auto ratio = [&](double x) { return p.mu_tilde(x) / x; };

  constexpr int kScan = 2000;
  const double step = (b - a) / kScan;
  int best = 0;
  double best_val = ratio(a);
  for (int i = 1; i <= kScan; ++i) {
    const double v = ratio(a + step * i);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = a + step * std::max(best - 1, 0);
  double hi = a + step * std::min(best + 1, kScan);
  double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
  double f1 = ratio(x1), f2 = ratio(x2);
  while (hi - lo > 1e-10) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = ratio(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = ratio(x2);
    }
  }
  double x0 = (lo + hi) / 2;
  const double grid_x = a + step * best;
  if (ratio(x0) < best_val || (ratio(x0) == best_val && grid_x < x0)) x0 = grid_x;
  p.x0 = x0;
  p.lambda = ratio(x0);
  if (!(p.lambda > 0) || !std::isfinite(p.lambda))
    throw MaximizationFailed("sup of mu-tilde(x)/x on [a, b] is not positive");
  p.r = p.t_scale() / p.lambda;
  p.strip_bound = (mu(p.h) - mu(M_PI / 2)) / p.lambda;
  return p;
}

PsiReport verify_psi(const Psi& psi, std::size_t samples, std::uint64_t seed, double slack) {
  PsiReport rep;
  rep.upper.name = "Psi(x+iy) <= x chi(x) + R|y|";
  rep.lower.name = "Psi(x0+iy) >= x0";
  rep.strip.name = "Psi(x+iy) >= -H on |x| <= kappa";
  std::mt19937_64 rng(seed);
  const double span = 3 * (psi.b + psi.kappa);
  std::uniform_real_distribution<double> xs(-span, span);
  std::uniform_real_distribution<double> ys(-10, 10);
  std::uniform_real_distribution<double> strip(-psi.kappa, psi.kappa);
  auto chi = [&](double x) { return x >= psi.a && x <= psi.b ? x : 0.0; };

  rep.lower.record(psi.x0, psi({psi.x0, 0}), slack, {psi.x0, 0});
  for (double x : {psi.a, psi.b, psi.x0, 0.0, -psi.kappa, 2 * psi.b})
    rep.upper.record(psi({x, 0}), chi(x), slack, {x, 0});
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = xs(rng), y = ys(rng);
    rep.upper.record(psi({x, y}), chi(x) + psi.r * std::fabs(y), slack, {x, y});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const double y = ys(rng);
    rep.lower.record(psi.x0, psi({psi.x0, y}), slack, {psi.x0, y});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = strip(rng), y = ys(rng);
    rep.strip.record(-psi.strip_bound, psi({x, y}), slack, {x, y});
  }
  return rep;
}

}  // namespace carrier
