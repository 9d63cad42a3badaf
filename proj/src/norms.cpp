#include <carrier/demos.hpp>
#include <carrier/errors.hpp>

#include <cmath>

namespace carrier {

EntireSample zero_sample(std::size_t k) {
  return {"0", k, [](const CVector&) { return Complex(0); }};
}

EntireSample exponential_sample(const std::vector<Complex>& c) {
  std::string label = "exp(";
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j) label += " + ";
    label += "(" + std::to_string(c[j].real()) + "," + std::to_string(c[j].imag()) + ") z" +
             std::to_string(j + 1);
  }
  label += ")";
  return {label, c.size(), [c](const CVector& z) {
            Complex s = 0;
            for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * z[j];
            return std::exp(s);
          }};
}

EntireSample sinc_sample(std::size_t k, double s, int power) {
  const std::string label =
      "prod sinc(" + std::to_string(s) + " z_j)^" + std::to_string(power) + ", k=" + std::to_string(k);
  return {label, k, [s, power](const CVector& z) {
            Complex p = 1;
            for (const auto& zj : z) {
              const Complex w = s * zj;
              const Complex q = std::abs(w) < 1e-8 ? Complex(1) - w * w / 6.0 : std::sin(w) / w;
              p *= std::pow(q, power);
            }
            return p;
          }};
}

namespace {

// Visits every grid point; `edge` marks points on the boundary of the box.
template <typename F>
void for_grid(std::size_t k, const NormGrid& g, F&& visit) {
  if (g.points < 2) throw PreconditionFailed("a norm grid needs at least 2 points per axis");
  const std::size_t n = g.points;
  std::vector<std::size_t> idx(2 * k, 0);
  CVector z(k);
  for (;;) {
    bool edge = false;
    for (std::size_t j = 0; j < k; ++j) {
      const double x = -g.x_half + 2 * g.x_half * static_cast<double>(idx[j]) / static_cast<double>(n - 1);
      const double y =
          -g.y_half + 2 * g.y_half * static_cast<double>(idx[k + j]) / static_cast<double>(n - 1);
      z[j] = {x, y};
      edge = edge || idx[j] == 0 || idx[j] == n - 1 || idx[k + j] == 0 || idx[k + j] == n - 1;
    }
    double w = 1;  // trapezoid weight
    for (auto i : idx)
      if (i == 0 || i == n - 1) w *= 0.5;
    visit(z, edge, w);
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == n) idx[d++] = 0;
    if (d == idx.size()) break;
  }
}

void check_dims(const EntireSample& f, const WeightParams& p) {
  if (f.dim != p.u.dim()) throw DimensionMismatch("sample and weight cone dimensions differ");
}

}  // namespace

NormEstimate sup_norm_scan(const EntireSample& f, const WeightParams& p, const NormGrid& grid) {
  check_dims(f, p);
  NormEstimate e;
  for_grid(f.dim, grid, [&](const CVector& z, bool edge, double) {
    const double a = std::abs(f.eval(z));
    const double v = a == 0 ? 0 : a * std::exp(-sigma_weight(p, z));
    e.value = std::max(e.value, v);
    if (edge) e.boundary = std::max(e.boundary, v);
    ++e.points;
  });
  return e;
}

NormEstimate sup_norm_estimate(const EntireSample& f, const WeightParams& p, const NormGrid& grid,
                               double tolerance) {
  auto e = sup_norm_scan(f, p, grid);
  if (e.boundary > tolerance * e.value)
    throw BoundaryNotNegligible("grid boundary carries " + std::to_string(e.boundary) + " of sup " +
                                std::to_string(e.value) + " for " + f.label);
  return e;
}

NormEstimate l2_norm_estimate(const EntireSample& f, const WeightParams& p, const NormGrid& grid,
                              double tolerance) {
  check_dims(f, p);
  const double hx = 2 * grid.x_half / static_cast<double>(grid.points - 1);
  const double hy = 2 * grid.y_half / static_cast<double>(grid.points - 1);
  const double cell = std::pow(hx * hy, static_cast<double>(f.dim));
  const double volume = std::pow(4 * grid.x_half * grid.y_half, static_cast<double>(f.dim));
  NormEstimate e;
  double sum = 0, edge_max = 0;
  for_grid(f.dim, grid, [&](const CVector& z, bool edge, double w) {
    const double a = std::abs(f.eval(z));
    const double v = a == 0 ? 0 : a * a * std::exp(-2 * sigma_weight(p, z));
    sum += w * v;
    if (edge) edge_max = std::max(edge_max, v);
    ++e.points;
  });
  e.value = std::sqrt(sum * cell);
  e.boundary = edge_max * volume;
  if (e.boundary > tolerance * e.value * e.value)
    throw BoundaryNotNegligible("grid boundary density " + std::to_string(edge_max) +
                                " is not negligible for " + f.label);
  return e;
}

double lemma2_eta(double big_a, double a_prime, double alpha) {
  return std::min(std::pow(big_a, -1 / alpha) - std::pow(a_prime, -1 / alpha), 1 / big_a - 1 / a_prime);
}

bool Lemma2Report::passed() const {
  if (!(eta > 0) || !gap_nonincreasing) return false;
  for (const auto& r : rows)
    if (!r.passed) return false;
  return true;
}

Lemma2Report lemma2_sequence(const EntireSample& g, const EntireSample& f, const Lemma2Params& p) {
  const auto k = g.dim;
  if (f.dim != k || p.w.dim() != k || p.w_prime.dim() != k)
    throw DimensionMismatch("g, f and the cones must share one dimension");
  if (std::abs(f.eval(CVector(k, 0)) - Complex(1)) > 1e-12) throw PreconditionFailed("f(0) must be 1");
  if (!(p.a_prime > p.big_a)) throw PreconditionFailed("A' must exceed A");
  if (p.n_max == 0) throw PreconditionFailed("n_max must be positive");

  auto params = [](double alpha, double a, double b, const Cone& u) { return WeightParams{alpha, a, b, u}; };
  Lemma2Report rep;
  rep.eta = lemma2_eta(p.big_a, p.a_prime, p.alpha);
  rep.f_norm = sup_norm_scan(f, params(1, p.a, p.b, p.w_prime), p.grid).value;
  rep.g_norm_w = sup_norm_scan(g, params(1, p.big_a, p.big_b, p.w), p.grid).value;
  rep.g_norm_w_prime = sup_norm_scan(g, params(p.alpha, p.big_a, p.big_b, p.w_prime), p.grid).value;
  const double rhs = rep.f_norm * (rep.g_norm_w + rep.g_norm_w_prime);
  const double b_tilde = p.big_b + p.b;

  double prev_gap = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= p.n_max; ++n) {
    const double nd = static_cast<double>(n);
    EntireSample gn{g.label + " * f(z/" + std::to_string(n) + ")", k, [&, nd](const CVector& z) {
                      CVector s(z);
                      for (auto& v : s) v /= nd;
                      return g.eval(z) * f.eval(s);
                    }};
    Lemma2Row row;
    row.n = n;
    row.lhs = std::max({sup_norm_scan(gn, params(1, p.big_a, b_tilde, p.w), p.grid).value,
                        sup_norm_scan(gn, params(1, nd * p.a, b_tilde, p.w_prime), p.grid).value,
                        sup_norm_scan(gn, params(p.alpha, p.big_a, b_tilde, p.w_prime), p.grid).value});
    row.rhs = rhs;
    row.passed = row.lhs <= rhs + p.slack * (1 + std::abs(rhs));
    for_grid(k, p.compact, [&](const CVector& z, bool, double) {
      row.pointwise_gap = std::max(row.pointwise_gap, std::abs(gn.eval(z) - g.eval(z)));
    });
    if (row.pointwise_gap > prev_gap * (1 + 1e-12)) rep.gap_nonincreasing = false;
    prev_gap = row.pointwise_gap;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace carrier
