#include <carrier/errors.hpp>
#include <carrier/weights.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace carrier {

namespace {

constexpr double kFloor = -1;

}  // namespace

double GsOracle::raw(const CVector& z) const {
  double s = 0;
  for (const auto& zj : z)
    for (std::size_t n = 1; n <= terms; ++n)
      s += std::max(theta(c * zj / std::pow(static_cast<double>(n), alpha)), kFloor);
  return s;
}

double GsOracle::operator()(const CVector& z) const { return (raw(z) - c_up) / beta_up; }

GsOracle build_gs_oracle(std::size_t k, double alpha, double c, double box, std::size_t terms) {
  if (!(alpha > 1) || !(c > 0) || !(box > 0) || k == 0)
    throw PreconditionFailed("the lattice weight needs alpha > 1, c > 0, box > 0, k >= 1");
  GsOracle s;
  s.k = k;
  s.alpha = alpha;
  s.c = c;
  s.box = box;
  s.terms = terms ? terms
                  : 2 * static_cast<std::size_t>(std::ceil(std::pow(2 * c * box / M_PI, 1 / alpha))) + 4;
  std::vector<double> scale(s.terms);
  double sum = 0;
  for (std::size_t n = 1; n <= s.terms; ++n) {
    scale[n - 1] = c / std::pow(static_cast<double>(n), alpha);
    sum += scale[n - 1];
  }
  // upper and lower real-axis profiles, both nonincreasing in t >= 0
  auto upper = [&](double t) {
    double v = 0;
    for (double w : scale) v += std::max(mu(w * t), kFloor);
    return v;
  };
  auto lower = [&](double t) {
    double v = 0;
    for (double w : scale) v += w * t <= M_PI / 2 ? mu(w * t) : kFloor;
    return v;
  };
  const double kd = static_cast<double>(k);
  const double root_box = std::pow(box, 1 / alpha);
  s.beta_up = -0.9 * upper(box) / root_box;
  const double gamma_raw = -1.1 * kd * lower(box) / root_box;

  constexpr std::size_t kGrid = 4000;
  s.grid = kGrid;
  double c_up = -std::numeric_limits<double>::infinity();
  double h_raw = -std::numeric_limits<double>::infinity();
  double prev_t = 0, prev_up = upper(0);
  for (std::size_t i = 1; i <= kGrid; ++i) {
    const double f = static_cast<double>(i) / kGrid;
    const double t = box * f * f;
    const double up = upper(t);
    // on [prev_t, t]: upper <= upper(prev_t), lower >= lower(t)
    c_up = std::max(c_up, prev_up + s.beta_up * std::pow(t, 1 / alpha));
    h_raw = std::max(h_raw, -kd * lower(t) - gamma_raw * std::pow(prev_t, 1 / alpha));
    prev_t = t;
    prev_up = up;
  }
  s.c_up = c_up;
  s.big_b = kd * sum / s.beta_up;
  s.gamma = gamma_raw / s.beta_up;
  s.h = (h_raw + c_up) / s.beta_up;
  return s;
}

GsReport verify_gs_oracle(const GsOracle& s, std::size_t samples, std::uint64_t seed, double slack) {
  GsReport rep;
  rep.upper.name = "sigma(x+iy) <= -|x|^{1/alpha} + B|y|";
  rep.lower.name = "sigma(x+iy) >= -gamma |x|^{1/alpha} - H";
  rep.real_axis.name = "sigma(x+iy) >= sigma(x)";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1, 1), ys(-5, 5), expo(-3, 0);
  for (std::size_t n = 0; n < samples; ++n) {
    const double scale = s.box * (n % 2 ? 1.0 : std::pow(10.0, expo(rng)));
    CVector z(s.k), x(s.k);
    std::vector<double> p;
    RealVector xr(s.k), yr(s.k);
    for (std::size_t j = 0; j < s.k; ++j) {
      xr[j] = scale * unit(rng);
      yr[j] = ys(rng);
      z[j] = {xr[j], yr[j]};
      x[j] = xr[j];
    }
    p.insert(p.end(), xr.begin(), xr.end());
    p.insert(p.end(), yr.begin(), yr.end());
    const double v = s(z);
    const double root = std::pow(sup_norm(xr), 1 / s.alpha);
    rep.upper.record(v, -root + s.big_b * sup_norm(yr), slack, p);
    rep.lower.record(-s.gamma * root - s.h, v, slack, p);
    rep.real_axis.record(s(x), v, slack, p);
  }
  return rep;
}

}  // namespace carrier
