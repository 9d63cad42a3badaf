#include <carrier/errors.hpp>
#include <carrier/weights.hpp>

#include <cmath>
#include <random>

namespace carrier {

namespace {

Cone merged(std::size_t dim, std::initializer_list<const Cone*> cones) {
  std::vector<Cone::Piece> pieces;
  for (const auto* c : cones)
    for (const auto& p : c->pieces()) pieces.push_back(p);
  return Cone(dim, std::move(pieces));
}

}  // namespace

double Rho::operator()(const CVector& z) const {
  return phi->injected(z) + (*sigma)(z) - dot(l, real_part(z));
}

Rho build_rho(const RhoInputs& in) {
  const auto k = in.u.dim();
  if (in.k1.dim() != k || in.k2.dim() != k) throw DimensionMismatch("cones live in different dimensions");
  if (in.kappa < 0 || in.d < 0) throw PreconditionFailed("kappa and d must be nonnegative");
  if (!is_proper(in.u).proper) throw NotProper("U is not contained in an open half-space");
  for (const auto* c : {&in.k1, &in.k2})
    for (const auto& piece : c->pieces())
      for (const auto& g : piece)
        if (!in.u.contains(g)) throw PreconditionFailed("K1 and K2 must lie in U");
  if (intersection_witness(in.k1, in.k2)) throw ConesIntersect("K1 and K2 meet away from 0");

  Rho rho;
  Rational eps(1, 4);
  for (int i = 0;; ++i) {
    if (i == 12) throw PreconditionFailed("no disjoint proper neighborhoods of K1 and K2 found");
    rho.v1 = conic_neighborhood(in.k1, eps);
    rho.v2 = conic_neighborhood(in.k2, eps);
    if (!intersection_witness(rho.v1, rho.v2) &&
        is_proper(merged(k, {&in.u, &rho.v1, &rho.v2})).proper)
      break;
    eps /= 2;
  }
  rho.eps = eps;
  rho.l = separating_functional_with_margin(rho.v1, in.kappa, merged(k, {&in.u, &rho.v2}));
  rho.l_norm = l1_norm(rho.l).get_d();
  // x outside the eps-neighborhood of K has delta_K(x) > eps/(1+eps) |x|
  rho.theta1 = Rational(eps / (1 + eps)).get_d();
  rho.theta2 = rho.theta1;

  rho.phi = build_phi(rho.v2, rho.v1, rho.l, in.a, in.b, in.tau_request, in.phi);
  rho.sigma = build_gs_oracle(k, in.alpha, 1.0, in.box);
  const double kappa = in.kappa.get_d();
  rho.b = rho.phi->r + rho.sigma->big_b + (kappa + rho.l_norm) / rho.theta1;
  rho.gamma = rho.sigma->gamma;
  rho.h = rho.sigma->h + (rho.phi->r_prime + rho.l_norm) * in.d.get_d() / rho.theta2;
  return rho;
}

bool RhoReport::passed() const {
  return to_u.passed() && to_k1.passed() && near_k2.passed() && in_v1.passed() && l_vs_u.passed();
}

RhoReport verify_rho(const Rho& rho, const RhoInputs& in, std::size_t samples, std::uint64_t seed,
                     double slack) {
  RhoReport rep;
  rep.to_u.name = "rho(x+iy) <= -|x|^{1/alpha} + b delta_U(x) + b|y|";
  rep.to_k1.name = "rho(x+iy) <= -kappa|x| + b delta_K1(x) + b|y|";
  rep.near_k2.name = "rho(x+iy) >= -gamma|x|^{1/alpha} - H, x in K2^d";
  rep.in_v1.name = "rho(x+iy) <= -kappa|x| + (r+B)|y|, x in V1";
  rep.l_vs_u.name = "max(-l(x), 0) <= b delta_U(x)";
  const auto k = in.u.dim();
  const double box = in.box;
  const double kappa = in.kappa.get_d();
  const double d = in.d.get_d();
  const double inv_alpha = 1 / in.alpha;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1, 1), ys(-5, 5), expo(-3, 0), frac(0, 1);

  auto build = [&](const RealVector& x, const RealVector& y, CVector& z, std::vector<double>& p) {
    z.assign(k, 0);
    p.clear();
    for (std::size_t i = 0; i < k; ++i) z[i] = {x[i], y[i]};
    p.insert(p.end(), x.begin(), x.end());
    p.insert(p.end(), y.begin(), y.end());
  };
  auto random_y = [&] {
    RealVector y(k);
    for (auto& v : y) v = ys(rng);
    return y;
  };
  CVector z;
  std::vector<double> p;
  for (std::size_t n = 0; n < samples; ++n) {
    const double scale = box * (n % 2 ? 1.0 : std::pow(10.0, expo(rng)));
    RealVector x(k);
    for (auto& v : x) v = scale * unit(rng);
    const auto y = random_y();
    build(x, y, z, p);
    const double v = rho(z);
    const double nx = sup_norm(x), ny = sup_norm(y);
    const double du = in.u.distance(x);
    rep.to_u.record(v, -std::pow(nx, inv_alpha) + rho.b * du + rho.b * ny, slack, p);
    rep.to_k1.record(v, -kappa * nx + rho.b * in.k1.distance(x) + rho.b * ny, slack, p);
    rep.l_vs_u.record(std::max(-dot(rho.l, x), 0.0), rho.b * du, slack, p);
  }
  const double r_plus_b = rho.phi->r + rho.sigma->big_b;
  if (!rho.v1.is_zero())
    for (std::size_t n = 0; n < samples; ++n) {
      auto x = rho.v1.sample_unit(rng);
      const double t = box * frac(rng);
      for (auto& v : x) v *= t;
      const auto y = random_y();
      build(x, y, z, p);
      rep.in_v1.record(rho(z), -kappa * sup_norm(x) + r_plus_b * sup_norm(y), slack, p);
    }
  for (std::size_t n = 0; n < samples; ++n) {
    auto x = in.k2.sample_unit(rng);
    const double t = std::max(box - d, 0.0) * frac(rng);
    for (auto& v : x) v = v * t + d * unit(rng);
    const auto y = random_y();
    build(x, y, z, p);
    rep.near_k2.record(-rho.gamma * std::pow(sup_norm(x), inv_alpha) - rho.h, rho(z), slack, p);
  }
  return rep;
}

}  // namespace carrier
