#include <carrier/cone.hpp>

#include <carrier/errors.hpp>
#include <carrier/simplex.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace carrier {

double sup_norm(const RealVector& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

Rational sup_norm(const Vector& x) {
  Rational m = 0;
  for (const auto& v : x) m = std::max<Rational>(m, abs(v));
  return m;
}

Rational l1_norm(const Vector& x) {
  Rational s = 0;
  for (const auto& v : x) s += abs(v);
  return s;
}

RealVector to_real(const Vector& x) {
  RealVector out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.get_d());
  return out;
}

double dot(const Vector& l, const RealVector& x) {
  double s = 0;
  for (std::size_t i = 0; i < l.size(); ++i) s += l[i].get_d() * x[i];
  return s;
}

Vector normalized(const Vector& g) {
  const auto n = sup_norm(g);
  Vector out = g;
  for (auto& v : out) v /= n;
  return out;
}

Cone::Cone(std::size_t dim, std::vector<Piece> pieces) : dim_(dim) {
  if (pieces.empty()) throw EmptyCone("a cone needs at least one piece");
  for (auto& p : pieces) {
    Piece kept;
    for (auto& g : p) {
      if (g.size() != dim) throw DimensionMismatch("generator of length " + std::to_string(g.size()) +
                                                   " in a cone in R^" + std::to_string(dim));
      if (!carrier::is_zero(g)) kept.push_back(std::move(g));
    }
    std::vector<RealVector> r;
    for (const auto& g : kept) r.push_back(to_real(g));
    pieces_.push_back(std::move(kept));
    real_.push_back(std::move(r));
  }
}

Cone Cone::zero(std::size_t dim) { return Cone(dim, {Piece{}}); }

Cone Cone::polyhedral(std::size_t dim, Piece generators) { return Cone(dim, {std::move(generators)}); }

Cone Cone::whole(std::size_t dim) {
  Piece g;
  for (std::size_t i = 0; i < dim; ++i)
    for (int s : {1, -1}) {
      Vector e = zero_vector(dim);
      e[i] = s;
      g.push_back(e);
    }
  return polyhedral(dim, std::move(g));
}

std::vector<Vector> Cone::unit_generators() const {
  std::vector<Vector> out;
  for (const auto& p : pieces_)
    for (const auto& g : p) out.push_back(normalized(g));
  return out;
}

bool Cone::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.empty(); });
}

namespace {

// min t  s.t.  -t <= x_i - (G c)_i <= t,  c >= 0.
// Variables: c (m), t, slacks (2k).
template <class T, class Gens>
std::vector<T> distance_lp(const Gens& gens, const std::vector<T>& x) {
  const auto k = x.size();
  const auto m = gens.size();
  const auto n = m + 1 + 2 * k;
  std::vector<std::vector<T>> a(2 * k, std::vector<T>(n, T(0)));
  std::vector<T> b(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      a[2 * i][j] = T(-gens[j][i]);
      a[2 * i + 1][j] = gens[j][i];
    }
    a[2 * i][m] = T(-1);
    a[2 * i + 1][m] = T(-1);
    a[2 * i][m + 1 + 2 * i] = T(1);
    a[2 * i + 1][m + 2 + 2 * i] = T(1);
    b[2 * i] = T(-x[i]);
    b[2 * i + 1] = x[i];
  }
  std::vector<T> c(n, T(0));
  c[m] = T(1);
  auto sol = solve_lp(a, b, c);
  std::vector<T> coeff(m, T(0));
  if (sol.status == LpStatus::kOptimal) std::copy_n(sol.x.begin(), m, coeff.begin());
  return coeff;
}

}  // namespace

double Cone::distance(const RealVector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("point has the wrong dimension");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& gens : real_) {
    RealVector r = x;
    if (!gens.empty()) {
      const auto c = distance_lp(gens, x);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const double cj = std::max(0.0, c[j]);
        for (std::size_t i = 0; i < dim_; ++i) r[i] -= cj * gens[j][i];
      }
    }
    best = std::min(best, sup_norm(r));
  }
  return best;
}

Rational Cone::distance_exact(const Vector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("point has the wrong dimension");
  std::optional<Rational> best;
  for (const auto& gens : pieces_) {
    Vector r = x;
    if (!gens.empty()) {
      const auto c = distance_lp(gens, x);
      for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < dim_; ++i) r[i] -= c[j] * gens[j][i];
    }
    const auto d = sup_norm(r);
    if (!best || d < *best) best = d;
  }
  return *best;
}

RealVector Cone::sample_unit(std::mt19937_64& rng) const {
  std::vector<std::size_t> live;
  for (std::size_t p = 0; p < real_.size(); ++p)
    if (!real_[p].empty()) live.push_back(p);
  RealVector x(dim_, 0.0);
  if (live.empty()) return x;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto& gens = real_[live[rng() % live.size()]];
  do {
    std::fill(x.begin(), x.end(), 0.0);
    for (const auto& g : gens) {
      const double w = u(rng);
      const double n = sup_norm(g);
      for (std::size_t i = 0; i < dim_; ++i) x[i] += w * g[i] / n;
    }
  } while (sup_norm(x) == 0);
  const double n = sup_norm(x);
  for (auto& v : x) v /= n;
  return x;
}

ProperReport is_proper(const Cone& k) {
  ProperReport rep;
  const auto gens = k.unit_generators();
  const auto dim = k.dim();
  const auto m = gens.size();
  if (m == 0) {
    rep.proper = true;
    rep.functional = zero_vector(dim);
    return rep;
  }
  // l = p - q;  (p - q).g_j - s_j = 1;  minimize sum p + q.
  const auto n = 2 * dim + m;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> b(m, Rational(1));
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t i = 0; i < 2 * dim; ++i) c[i] = 1;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      a[j][i] = gens[j][i];
      a[j][dim + i] = -gens[j][i];
    }
    a[j][2 * dim + j] = -1;
  }
  const auto sol = solve_lp(a, b, c);
  if (sol.status == LpStatus::kOptimal) {
    rep.proper = true;
    rep.functional = zero_vector(dim);
    for (std::size_t i = 0; i < dim; ++i) rep.functional[i] = sol.x[i] - sol.x[dim + i];
    return rep;
  }
  // Gordan alternative: convex weights with sum w_j g_j = 0.
  std::vector<std::vector<Rational>> ga(dim + 1, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> gb(dim + 1, Rational(0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < dim; ++i) ga[i][j] = gens[j][i];
    ga[dim][j] = 1;
  }
  gb[dim] = 1;
  const auto alt = solve_lp(ga, gb, std::vector<Rational>(m, Rational(0)));
  rep.proper = false;
  for (std::size_t j = 0; j < m; ++j)
    if (alt.status == LpStatus::kOptimal && alt.x[j] != 0) {
      rep.generators.push_back(gens[j]);
      rep.weights.push_back(alt.x[j]);
    }
  return rep;
}

std::optional<Vector> intersection_witness(const Cone& k1, const Cone& k2) {
  if (k1.dim() != k2.dim()) throw DimensionMismatch("cones live in different dimensions");
  const auto dim = k1.dim();
  for (const auto& p1 : k1.pieces())
    for (const auto& p2 : k2.pieces()) {
      if (p1.empty() || p2.empty()) continue;
      const auto m1 = p1.size();
      const auto m2 = p2.size();
      // G1 a - G2 b = 0 and s (G2 b)_i = 1.
      for (std::size_t i = 0; i < dim; ++i)
        for (int s : {1, -1}) {
          std::vector<std::vector<Rational>> a(dim + 1, std::vector<Rational>(m1 + m2, Rational(0)));
          std::vector<Rational> b(dim + 1, Rational(0));
          for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t j = 0; j < m1; ++j) a[r][j] = p1[j][r];
            for (std::size_t j = 0; j < m2; ++j) a[r][m1 + j] = -p2[j][r];
          }
          for (std::size_t j = 0; j < m2; ++j) a[dim][m1 + j] = s * p2[j][i];
          b[dim] = 1;
          const auto sol = solve_lp(a, b, std::vector<Rational>(m1 + m2, Rational(0)));
          if (sol.status != LpStatus::kOptimal) continue;
          Vector x = zero_vector(dim);
          for (std::size_t j = 0; j < m2; ++j)
            for (std::size_t r = 0; r < dim; ++r) x[r] += sol.x[m1 + j] * p2[j][r];
          return x;
        }
    }
  return std::nullopt;
}

namespace {

// Calls f on every point of the spacing-h grid of the unit sphere's faces.
template <class F>
void for_sphere_grid(std::size_t dim, double h, F&& f) {
  const auto steps = static_cast<std::size_t>(std::llround(2.0 / h));
  std::vector<std::size_t> idx(dim - 1, 0);
  RealVector p(dim);
  for (std::size_t face = 0; face < dim; ++face)
    for (double sign : {1.0, -1.0}) {
      std::fill(idx.begin(), idx.end(), 0);
      for (;;) {
        for (std::size_t i = 0, o = 0; i < dim; ++i)
          p[i] = i == face ? sign : -1.0 + 2.0 * static_cast<double>(idx[o++]) / static_cast<double>(steps);
        f(p);
        std::size_t c = 0;
        while (c < idx.size() && ++idx[c] > steps) idx[c++] = 0;
        if (c == idx.size()) break;
      }
    }
}

constexpr double kRoundoff = 1e-9;

}  // namespace

ThetaBound theta_lower_bound(const Cone& k1, const Cone& k2, double spacing, double min_spacing,
                             std::size_t max_points) {
  if (const auto w = intersection_witness(k1, k2)) {
    std::string s;
    for (const auto& v : *w) s += (s.empty() ? "" : ", ") + to_string(v);
    throw ConesIntersect("common nonzero point (" + s + ")");
  }
  ThetaBound out;
  if (k2.is_zero() || k1.is_zero()) return out;
  if (k1.dim() == 1) {
    // K2 != {0} and the cones meet only at 0, so K1 is {0} or the opposite ray.
    out.theta = 1;
    return out;
  }
  for (double h = spacing; h >= min_spacing; h /= 2) {
    const double steps = std::pow(2.0 / h + 1, static_cast<double>(k1.dim() - 1));
    if (2.0 * static_cast<double>(k1.dim()) * steps > static_cast<double>(max_points)) break;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t points = 0;
    for_sphere_grid(k1.dim(), h, [&](const RealVector& p) {
      if (k2.distance(p) > h / 2 + kRoundoff) return;
      ++points;
      worst = std::min(worst, k1.distance(p));
    });
    const double theta = worst - h / 2 - kRoundoff;
    if (theta > 0) {
      out.theta = std::min(theta, 1.0);
      out.spacing = h;
      out.grid_points = points;
      return out;
    }
  }
  throw GridTooCoarse("no positive theta down to spacing " + std::to_string(min_spacing));
}

Cone conic_neighborhood(const Cone& u, const Rational& eps) {
  std::vector<Cone::Piece> pieces;
  const auto dim = u.dim();
  for (const auto& p : u.pieces()) {
    Cone::Piece out;
    for (const auto& g : p) {
      const auto unit = normalized(g);
      for (std::size_t s = 0; s < (std::size_t{1} << dim); ++s) {
        Vector v = unit;
        for (std::size_t i = 0; i < dim; ++i) v[i] += ((s >> i) & 1U) ? -eps : eps;
        out.push_back(v);
      }
    }
    pieces.push_back(std::move(out));
  }
  return Cone(dim, std::move(pieces));
}

bool in_d_neighborhood(const Cone& k, const Rational& d, const Vector& x) {
  return k.distance_exact(x) <= d;
}

bool in_d_neighborhood(const Cone& k, double d, const RealVector& x) { return k.distance(x) <= d; }

Vector separating_functional_with_margin(const Cone& v1, const Rational& kappa,
                                         const std::optional<Cone>& containing) {
  std::vector<Cone::Piece> pieces = v1.pieces();
  if (containing) {
    if (containing->dim() != v1.dim()) throw DimensionMismatch("cones live in different dimensions");
    for (const auto& p : containing->pieces()) pieces.push_back(p);
  }
  const auto rep = is_proper(Cone(v1.dim(), std::move(pieces)));
  if (!rep.proper) throw NotProper("no functional is positive on every generator");
  Vector l = rep.functional;
  if (kappa > 0)
    for (auto& v : l) v *= kappa;
  return l;
}

}  // namespace carrier
