#include <carrier/errors.hpp>
#include <carrier/simplex.hpp>
#include <carrier/weights.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace carrier {

namespace {

Rational lin(const Vector& l, const Vector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < l.size(); ++i) s += l[i] * x[i];
  return s;
}

// Uniform distance between S = K cap {a <= l <= b} and the cone `outside`.
Rational section_distance(const Cone& k, const Cone& outside, const Vector& l, const Rational& a,
                          const Rational& b) {
  const auto dim = k.dim();
  std::optional<Rational> best;
  for (const auto& g : k.pieces()) {
    if (g.empty()) continue;
    for (const auto& h : outside.pieces()) {
      const auto m1 = g.size(), m2 = h.size();
      const auto t = m1 + m2;
      const auto n = t + 1 + 2 * dim + 2;
      std::vector<std::vector<Rational>> rows(2 * dim + 2, std::vector<Rational>(n, Rational(0)));
      std::vector<Rational> rhs(2 * dim + 2, Rational(0));
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < m1; ++j) {
          rows[2 * i][j] = g[j][i];
          rows[2 * i + 1][j] = -g[j][i];
        }
        for (std::size_t j = 0; j < m2; ++j) {
          rows[2 * i][m1 + j] = -h[j][i];
          rows[2 * i + 1][m1 + j] = h[j][i];
        }
        rows[2 * i][t] = -1;
        rows[2 * i + 1][t] = -1;
        rows[2 * i][t + 1 + 2 * i] = 1;
        rows[2 * i + 1][t + 2 + 2 * i] = 1;
      }
      for (std::size_t j = 0; j < m1; ++j) {
        rows[2 * dim][j] = lin(l, g[j]);
        rows[2 * dim + 1][j] = lin(l, g[j]);
      }
      rows[2 * dim][n - 2] = -1;
      rows[2 * dim + 1][n - 1] = 1;
      rhs[2 * dim] = a;
      rhs[2 * dim + 1] = b;
      std::vector<Rational> cost(n, Rational(0));
      cost[t] = 1;
      const auto sol = solve_lp(rows, rhs, cost);
      if (sol.status != LpStatus::kOptimal) continue;
      if (!best || sol.value < *best) best = sol.value;
    }
  }
  return best.value_or(Rational(0));
}

}  // namespace

double Phi::dual_norm(const RealVector& xi, const RealVector& x) const {
  const double lx = dot(l_, x);
  double s = std::fabs(lx);
  for (std::size_t j = 0; j < k_; ++j)
    if (j != pivot_) s += std::fabs(x[j] - lx * xi[j]);
  return s;
}

double Phi::term(const RealVector& xi, double s, const CVector& z) const {
  Complex lw = 0;
  for (std::size_t i = 0; i < k_; ++i) lw += lr_[i] * z[i];
  lw /= s;
  double v = (*psi)(lw);
  for (std::size_t j = 0; j < k_; ++j)
    if (j != pivot_) v += tau * theta(z[j] / s - lw * xi[j]);
  return s * v;
}

double Phi::pure(const CVector& z) const {
  if (trivial_) return 0;
  if (k_ == 1) return std::max(lr_[0] * z[0].real(), 0.0);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& xi : xis_)
    for (double s : ss_) best = std::max(best, term(xi, s, z));
  return best;
}

double Phi::injected(const CVector& z) const {
  double best = pure(z);
  if (trivial_ || k_ == 1) return best;
  const auto x = real_part(z);
  const double nx = sup_norm(x);
  const auto& xi0 = xis_.front();
  if (nx == 0) {
    best = std::max(best, term(xi0, 1e-12 * (1 + sup_norm(imag_part(z))), z));
    return best;
  }
  best = std::max(best, term(xi0, dual_norm(xi0, x), z));
  const double lx = dot(l_, x);
  if (lx > 0 && cone_->distance(x) <= 1e-12 * nx) {
    RealVector xi = x;
    for (auto& v : xi) v /= lx;
    best = std::max(best, term(xi, lx / psi->x0, z));
  }
  return best;
}

Phi build_phi(const Cone& k, const Cone& outside, const Vector& l, const Rational& a,
              const Rational& b, double tau_request, const PhiOptions& opts) {
  if (l.size() != k.dim() || outside.dim() != k.dim())
    throw DimensionMismatch("cone, neighborhood and functional dimensions differ");
  Phi phi;
  phi.k_ = k.dim();
  phi.l_ = l;
  phi.lr_ = to_real(l);
  phi.cone_ = k;
  if (k.is_zero()) {
    phi.trivial_ = true;
    return phi;
  }
  const auto gens = k.unit_generators();
  Rational lambda_k = lin(l, gens.front());
  for (const auto& g : gens) {
    const auto v = lin(l, g);
    if (v <= 0) throw PreconditionFailed("l is not positive on every generator of K");
    lambda_k = std::min(lambda_k, v);
  }
  phi.lambda_k = lambda_k.get_d();
  if (phi.k_ == 1) return phi;
  if (const auto w = intersection_witness(k, outside))
    throw NotANeighborhood("K meets the closed complement of V away from 0");
  if (!(a > 0) || !(b > a)) throw PreconditionFailed("Phi needs 0 < a < b");

  const auto dim = phi.k_;
  for (std::size_t i = 1; i < dim; ++i)
    if (abs(l[i]) > abs(l[phi.pivot_])) phi.pivot_ = i;

  // cross-section vertices, per piece
  std::vector<std::vector<Vector>> q;
  for (const auto& piece : k.pieces()) {
    if (piece.empty()) continue;
    std::vector<Vector> verts;
    for (const auto& g : piece) {
      auto v = g;
      const auto lg = lin(l, g);
      for (auto& c : v) c /= lg;
      verts.push_back(v);
    }
    q.push_back(verts);
  }

  // M: the max of the convex function |x|_xi sits at cube and Q vertices.
  Rational big_m = 0, q_norm = 1;
  for (const auto& verts : q)
    for (const auto& xi : verts) {
      q_norm = std::max(q_norm, sup_norm(xi));
      for (std::size_t s = 0; s < (std::size_t{1} << dim); ++s) {
        Vector v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = ((s >> i) & 1U) ? -1 : 1;
        const auto lv = lin(l, v);
        Rational n = abs(lv);
        for (std::size_t j = 0; j < dim; ++j)
          if (j != phi.pivot_) n += abs(v[j] - lv * xi[j]);
        big_m = std::max(big_m, n);
      }
    }
  phi.big_m = big_m.get_d();
  // |x| <= max(|xi|, |e_j|) |x|_xi and every |e_j| = 1 for the pivot basis.
  phi.m = Rational(1 / q_norm).get_d();
  const auto d = section_distance(k, outside, l, a, b);
  if (d <= 0) throw NotANeighborhood("the section of K touches the complement of V");
  phi.d = d.get_d();

  const double ad = a.get_d(), bd = b.get_d();
  phi.psi = build_psi(ad, bd, 1.0);
  const double km1 = static_cast<double>(dim - 1);
  const double mu_md = mu(phi.m * phi.d / km1);
  phi.tau = std::max(tau_request, -bd / mu_md);
  phi.r = phi.big_m * (phi.psi->r + phi.tau);
  phi.h_tau = phi.psi->strip_bound - phi.tau * km1 * mu(1.0);
  phi.r_prime = phi.big_m * phi.h_tau;

  for (const auto& verts : q)
    for (const auto& xi : verts) phi.xis_.push_back(to_real(xi));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t s = 0; s < opts.xi_samples; ++s) {
    const auto& verts = q[rng() % q.size()];
    RealVector xi(dim, 0.0);
    double total = 0;
    std::vector<double> w(verts.size());
    for (auto& x : w) total += (x = u(rng));
    for (std::size_t j = 0; j < verts.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) xi[i] += w[j] / total * verts[j][i].get_d();
    phi.xis_.push_back(xi);
  }
  const double ratio =
      opts.s_points > 1 ? std::pow(opts.s_max / opts.s_min, 1.0 / static_cast<double>(opts.s_points - 1)) : 1;
  for (std::size_t i = 0; i < std::max<std::size_t>(opts.s_points, 1); ++i)
    phi.ss_.push_back(opts.s_min * std::pow(ratio, static_cast<double>(i)));
  return phi;
}

bool PhiReport::passed() const {
  return lower.passed() && upper.passed() && outside.passed() && on_cone.passed();
}

PhiReport verify_phi(const Phi& phi, const Cone& outside, std::size_t samples, std::uint64_t seed,
                     double slack) {
  PhiReport rep;
  rep.lower.name = "-r'|x| <= Phi(x+iy)";
  rep.upper.name = "Phi(x+iy) <= max(l(x), 0) + r|y|";
  rep.outside.name = "Phi(x+iy) <= r|y|, x outside V";
  rep.on_cone.name = "Phi(x+iy) >= l(x), x in K";
  const auto k = phi.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xs(-10, 10), ys(-5, 5), radius(0, 10);
  auto point = [&](const RealVector& x, const RealVector& y) {
    CVector z(k);
    std::vector<double> p;
    for (std::size_t i = 0; i < k; ++i) {
      z[i] = {x[i], y[i]};
      p.push_back(x[i]);
    }
    p.insert(p.end(), y.begin(), y.end());
    return std::pair{z, p};
  };
  auto random_y = [&] {
    RealVector y(k);
    for (auto& v : y) v = ys(rng);
    return y;
  };
  const auto& l = phi.functional();
  for (std::size_t s = 0; s < samples; ++s) {
    RealVector x(k);
    for (auto& v : x) v = xs(rng);
    const auto y = random_y();
    const auto [z, p] = point(x, y);
    const double v = phi.injected(z);
    rep.lower.record(-phi.r_prime * sup_norm(x), v, slack, p);
    rep.upper.record(v, std::max(dot(l, x), 0.0) + phi.r * sup_norm(y), slack, p);
  }
  if (!outside.is_zero())
    for (std::size_t s = 0; s < samples; ++s) {
      auto x = outside.sample_unit(rng);
      const double t = radius(rng);
      for (auto& v : x) v *= t;
      const auto y = random_y();
      const auto [z, p] = point(x, y);
      rep.outside.record(phi.injected(z), phi.r * sup_norm(y), slack, p);
    }
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = phi.cone().sample_unit(rng);
    const double t = radius(rng);
    for (auto& v : x) v *= t;
    const auto y = random_y();
    const auto [z, p] = point(x, y);
    rep.on_cone.record(dot(l, x), phi.injected(z), slack, p);
  }
  return rep;
}

}  // namespace carrier
