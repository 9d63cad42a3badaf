#include <carrier/demos.hpp>
#include <carrier/errors.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>

namespace carrier {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;

constexpr std::size_t kNodeBudget = 4'000'000;

double profile(double r2) { return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0; }

double integrate(const std::function<double(double)>& f, double a, double b, double tolerance) {
  if (!(b > a)) return 0;
  double err = 0;
  const double v = Kronrod::integrate(f, a, b, 8, 1e-12, &err);
  if (err > tolerance) throw QuadratureBudgetExceeded("Gauss-Kronrod error estimate " + std::to_string(err));
  return v;
}

double euclid(const RealVector& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

Bump::Bump(std::size_t k, double delta) : k_(k), delta_(delta) {
  if (k == 0 || !(delta > 0)) throw PreconditionFailed("the bump needs k >= 1 and delta > 0");
  const double kd = static_cast<double>(k);
  // surface area of the unit sphere in R^k times the radial integral
  const double area = 2 * std::pow(M_PI, kd / 2) / std::tgamma(kd / 2);
  const double radial =
      integrate([&](double r) { return profile(r * r) * std::pow(r, kd - 1); }, 0, 1, 1e-13);
  const double mass = area * radial * std::pow(delta, kd);
  scale_ = 1 / mass;
}

double Bump::raw(const RealVector& x) const {
  const double r = euclid(x) / delta_;
  return profile(r * r);
}

double Bump::operator()(const RealVector& x) const { return scale_ * raw(x); }

RealVector Bump::gradient(const RealVector& x) const {
  const double r = euclid(x) / delta_;
  RealVector g(x.size(), 0.0);
  if (r >= 1) return g;
  const double u = 1 - r * r;
  const double v = scale_ * profile(r * r);
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = v * (-2 * x[j] / (delta_ * delta_)) / (u * u);
  return g;
}

SplitValues mollifier_parts(const SplittingInputs& in, const Bump& g0, const RealVector& x) {
  const auto k = x.size();
  const double delta = g0.delta();
  SplitValues out;
  out.grad_g2.assign(k, 0.0);
  const double dw = in.w.distance(x);
  const double dc = in.w_complement.distance(x);
  if (dw > delta) {
    out.g1 = 1;
    return out;
  }
  if (dc > delta) {
    out.g2 = 1;
    return out;
  }
  if (k == 1) {
    // int g0(t) 1_C(x - t) dt for a cone C in R
    auto part = [&](const Cone& c) {
      const bool pos = c.contains({Rational(1)}), neg = c.contains({Rational(-1)});
      auto g = [&](double t) { return g0({t}); };
      if (pos && neg) return std::pair{1.0, 0.0};
      const double gx = g0({x[0]});
      if (pos) return std::pair{integrate(g, -delta, std::min(x[0], delta), in.tolerance), gx};
      if (neg) return std::pair{integrate(g, std::max(x[0], -delta), delta, in.tolerance), -gx};
      return std::pair{0.0, 0.0};
    };
    const auto [g2, d2] = part(in.w);
    out.g2 = g2;
    out.grad_g2[0] = d2;
    out.g1 = part(in.w_complement).first;
    return out;
  }
  const std::size_t n = in.nodes;
  if (n == 0 || std::pow(static_cast<double>(n), static_cast<double>(k)) > kNodeBudget)
    throw QuadratureBudgetExceeded("tensor rule with " + std::to_string(n) + "^" + std::to_string(k) +
                                   " nodes");
  const double h = 2 * delta / static_cast<double>(n);
  const double cell = std::pow(h, static_cast<double>(k));
  std::vector<std::size_t> idx(k, 0);
  RealVector t(k), p(k);
  double mass = 0;
  for (;;) {
    for (std::size_t j = 0; j < k; ++j) t[j] = -delta + (static_cast<double>(idx[j]) + 0.5) * h;
    const double v = g0(t);
    if (v > 0) {
      mass += v * cell;
      for (std::size_t j = 0; j < k; ++j) p[j] = x[j] - t[j];
      const double tol = 1e-12 * (1 + sup_norm(p));
      if (in.w.distance(p) <= tol) {
        out.g2 += v * cell;
        const auto g = g0.gradient(t);
        for (std::size_t j = 0; j < k; ++j) out.grad_g2[j] += g[j] * cell;
      }
      if (in.w_complement.distance(p) <= tol) out.g1 += v * cell;
    }
    std::size_t d = 0;
    while (d < k && ++idx[d] == n) idx[d++] = 0;
    if (d == k) break;
  }
  // unit mass for the rule itself
  out.g1 /= mass;
  out.g2 /= mass;
  for (auto& g : out.grad_g2) g /= mass;
  return out;
}

bool SplittingReport::passed() const {
  if (!(partition.passed() && support.passed() && near_w.passed() && off_v.passed())) return false;
  if (!dbar) return true;
  for (double o : dbar->orders)
    if (!(o >= 1.8)) return false;
  return dbar->richardson_error < dbar->errors.back();
}

SplittingReport mollifier_splitting(const SplittingInputs& in) {
  const auto k = in.w.dim();
  if (in.v.dim() != k || in.w_complement.dim() != k || in.f.dim != k)
    throw DimensionMismatch("splitting inputs live in different dimensions");
  if (!(in.delta > 0) || !(in.alpha >= 1) || !(in.big_a > 0) || !(in.big_b > 0) || !(in.eps > 0))
    throw PreconditionFailed("splitting needs delta, A, B, eps > 0 and alpha >= 1");
  if (intersection_witness(in.v, in.w_complement))
    throw PreconditionFailed("the closure of V meets the complement of W away from 0");

  SplittingReport rep;
  rep.partition.name = "|g1 + g2 - 1| <= tolerance";
  rep.support.name = "grad g2 != 0 => dist(x, boundary of W) <= delta";
  rep.near_w.name = "sigma_W(z) <= sigma_R^k(z) + B delta on supp g2";
  rep.off_v.name = "sigma_W(z) <= sigma^1_{V,eps,B~}(z) + R on supp g1";
  rep.theta = std::min(1.0, theta_lower_bound(in.v, in.w_complement).theta);
  if (!(rep.theta > 0)) throw PreconditionFailed("no positive angle between V and the complement of W");
  rep.b_tilde = in.big_b / rep.theta + 1 / (rep.theta * in.eps);
  rep.r = rep.b_tilde * (1 + rep.theta) * in.delta;

  const Bump g0(k, in.delta);
  const WeightParams on_w{in.alpha, in.big_a, in.big_b, in.w};
  const WeightParams on_all{in.alpha, in.big_a, in.big_b, Cone::whole(k)};
  const WeightParams on_v{1, in.eps, rep.b_tilde, in.v};
  std::mt19937_64 rng(in.seed);
  std::uniform_real_distribution<double> unit(-1, 1);
  CVector z(k);
  std::vector<double> pt(2 * k);
  for (std::size_t s = 0; s < in.samples; ++s) {
    const double span = s % 2 ? 4.0 : 3 * in.delta;
    RealVector x(k);
    for (std::size_t j = 0; j < k; ++j) {
      x[j] = span * unit(rng);
      const double y = 2 * unit(rng);
      z[j] = {x[j], y};
      pt[j] = x[j];
      pt[k + j] = y;
    }
    const auto parts = mollifier_parts(in, g0, x);
    rep.partition.record(std::abs(parts.g1 + parts.g2 - 1), in.tolerance, 0, pt);
    const double dw = in.w.distance(x), dc = in.w_complement.distance(x);
    if (sup_norm(parts.grad_g2) > 1e-12) rep.support.record(std::max(dw, dc), in.delta, 1e-12, pt);
    const double sw = sigma_weight(on_w, z);
    if (dw <= in.delta) rep.near_w.record(sw, sigma_weight(on_all, z) + in.big_b * in.delta, 1e-12, pt);
    if (dc <= in.delta) rep.off_v.record(sw, sigma_weight(on_v, z) + rep.r, 1e-12, pt);
  }

  if (k == 1) {
    DbarRefinement ref;
    auto f1 = [&](double x, double y) { return mollifier_parts(in, g0, {x}).g1 * in.f.eval({Complex(x, y)}); };
    auto fd = [&](double x, double y, double h) {
      const Complex dx = (f1(x + h, y) - f1(x - h, y)) / (2 * h);
      const Complex dy = (f1(x, y + h) - f1(x, y - h)) / (2 * h);
      return 0.5 * (dx + Complex(0, 1) * dy);
    };
    std::vector<std::pair<double, double>> pts;
    for (int i = -4; i <= 4; ++i)
      for (double y : {-1.0, 0.0, 1.5}) pts.emplace_back(0.2 * in.delta * i, y);
    std::vector<std::vector<Complex>> d(3);
    for (int lev = 0; lev < 3; ++lev) {
      const double h = in.fd_step / std::pow(2.0, lev);
      ref.steps.push_back(h);
      double err = 0;
      for (const auto& [x, y] : pts) {
        const Complex exact = -0.5 * in.f.eval({Complex(x, y)}) * mollifier_parts(in, g0, {x}).grad_g2[0];
        d[lev].push_back(fd(x, y, h));
        err = std::max(err, std::abs(d[lev].back() - exact));
      }
      ref.errors.push_back(err);
    }
    for (std::size_t i = 0; i + 1 < ref.errors.size(); ++i)
      ref.orders.push_back(std::log2(ref.errors[i] / ref.errors[i + 1]));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto [x, y] = pts[i];
      const Complex exact = -0.5 * in.f.eval({Complex(x, y)}) * mollifier_parts(in, g0, {x}).grad_g2[0];
      ref.richardson_error = std::max(ref.richardson_error, std::abs((4.0 * d[2][i] - d[1][i]) / 3.0 - exact));
    }
    rep.dbar = ref;
  }
  return rep;
}

}  // namespace carrier
