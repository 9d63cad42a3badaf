#include <carrier/demos.hpp>
#include <carrier/errors.hpp>

#include <cmath>

namespace carrier {

namespace {

double smooth_unit_step(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  const double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  return a / (a + b);
}

// Trapezoidal nodes on [0, r] and periodic nodes on the circle, both fed to
// visit(rho, weight, e^{i phi}).
template <typename F>
void polar_rule(double r, std::size_t nr, std::size_t nphi, F&& visit) {
  const double h = r / static_cast<double>(nr);
  const double dphi = 2 * M_PI / static_cast<double>(nphi);
  for (std::size_t i = 0; i <= nr; ++i) {
    const double rho = h * static_cast<double>(i);
    const double w = (i == 0 || i == nr ? 0.5 : 1.0) * h * dphi;
    for (std::size_t j = 0; j < nphi; ++j) visit(rho, w, std::polar(1.0, dphi * static_cast<double>(j)));
  }
}

}  // namespace

DbarDatum zero_datum() { return {"0", [](Complex) { return 0.0; }, 0, 0}; }

DbarDatum mollified_disc(double delta, Complex center) {
  if (!(delta > 0) || !(delta < 1)) throw PreconditionFailed("the disc datum needs 0 < delta < 1");
  return {"smooth step of the unit disc, width " + std::to_string(delta),
          [delta, center](Complex w) { return smooth_unit_step((1 - std::abs(w - center)) / delta); }, center, 1};
}

CauchySolver::CauchySolver(DbarDatum eta, DbarOptions opts) : eta_(std::move(eta)), opts_(opts) {
  if (opts_.radial_nodes == 0 || opts_.angular_nodes == 0)
    throw PreconditionFailed("the polar rule needs nodes in both directions");
  if (!(eta_.radius > 0)) return;
  moments_.assign(opts_.moments, 0);
  polar_rule(eta_.radius, 16 * opts_.radial_nodes, opts_.angular_nodes, [&](double rho, double w, Complex e) {
    const double v = eta_.eta(eta_.center + rho * e);
    if (v == 0) return;
    Complex p = rho * w * v;  // rho from the area element
    const Complex u = rho * e;
    for (auto& m : moments_) {
      m += p;
      p *= u;
    }
  });
}

Complex CauchySolver::near_field(Complex z) const {
  if (!(eta_.radius > 0)) return 0;
  Complex s = 0;
  // w = z + rho e^{i phi}: 1/(z - w) dlambda = -e^{-i phi} drho dphi
  polar_rule(std::abs(z - eta_.center) + eta_.radius, opts_.radial_nodes, opts_.angular_nodes,
             [&](double rho, double w, Complex e) {
               const double v = eta_.eta(z + rho * e);
               if (v != 0) s += w * v * std::conj(e);
             });
  return -s / M_PI;
}

Complex CauchySolver::operator()(Complex z) const {
  if (!(eta_.radius > 0)) return 0;
  const Complex u = z - eta_.center;
  if (std::abs(u) < 2 * eta_.radius) return near_field(z);
  Complex s = 0, p = 1.0 / u;
  for (const auto& m : moments_) {
    s += m * p;
    p /= u;
  }
  return s / M_PI;
}

double CauchySolver::residual(const std::vector<Complex>& points, double step) const {
  double worst = 0;
  const Complex i(0, 1);
  for (const auto& z : points) {
    const Complex dx = ((*this)(z + step) - (*this)(z - step)) / (2 * step);
    const Complex dy = ((*this)(z + i * step) - (*this)(z - i * step)) / (2 * step);
    worst = std::max(worst, std::abs(0.5 * (dx + i * dy) - eta_.eta(z)));
  }
  return worst;
}

std::vector<Complex> dbar_solve_1d(const DbarDatum& eta, const std::vector<Complex>& points,
                                   const DbarOptions& opts) {
  const CauchySolver psi(eta, opts);
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& z : points) out.push_back(psi(z));
  return out;
}

std::vector<Complex> disc_grid(Complex c, double radius, double spacing) {
  if (!(spacing > 0)) throw PreconditionFailed("grid spacing must be positive");
  std::vector<Complex> out;
  const auto n = static_cast<long>(std::floor(radius / spacing));
  for (long i = -n; i <= n; ++i)
    for (long j = -n; j <= n; ++j) {
      const Complex u(spacing * static_cast<double>(i), spacing * static_cast<double>(j));
      if (std::abs(u) <= radius) out.push_back(c + u);
    }
  return out;
}

double DbarStudy::min_order() const {
  double m = std::numeric_limits<double>::infinity();
  for (double o : orders) m = std::min(m, o);
  return m;
}

DbarStudy dbar_refinement_study(double delta, const std::vector<std::size_t>& levels, double spacing,
                                double fd_step) {
  if (levels.size() < 2) throw PreconditionFailed("a refinement study needs at least two levels");
  DbarStudy st;
  st.delta = delta;
  st.levels = levels;
  st.fd_step = fd_step;
  const auto datum = mollified_disc(delta);
  const auto inside = disc_grid(0, 1 - delta, spacing);
  st.points = inside.size();
  for (auto n : levels) {
    const CauchySolver psi(datum, {n, n});
    double err = 0;
    for (const auto& z : inside) err = std::max(err, std::abs(psi.near_field(z) - std::conj(z)));
    st.errors.push_back(err);
  }
  for (std::size_t i = 0; i + 1 < st.errors.size(); ++i)
    st.orders.push_back(std::log2(st.errors[i] / st.errors[i + 1]));
  const CauchySolver finest(datum, {levels.back(), levels.back()});
  st.residual = finest.residual(disc_grid(0, 1.25, spacing), fd_step);
  return st;
}

HormanderReport hormander_check(const CauchySolver& psi, const WeightEvaluator& rho,
                                const HormanderOptions& opts,
                                const std::function<Complex(Complex)>& correction) {
  HormanderReport rep;
  rep.weight = rho.label;
  const auto& eta = psi.datum();
  if (eta.radius > 0) {
    rep.residual = psi.residual(disc_grid(eta.center, 1.25 * eta.radius, 0.25 * eta.radius), 5e-4);
    if (rep.residual > opts.residual_tolerance)
      throw ResidualTooLarge("dbar residual " + std::to_string(rep.residual) + " exceeds " +
                             std::to_string(opts.residual_tolerance));
  }
  const auto n = static_cast<long>(std::llround(opts.half_width / opts.spacing));
  const double cell = opts.spacing * opts.spacing;
  double lhs = 0, rhs = 0, fixed = 0;
  for (long i = -n; i <= n; ++i)
    for (long j = -n; j <= n; ++j) {
      const Complex z(opts.spacing * static_cast<double>(i), opts.spacing * static_cast<double>(j));
      const double w = (std::abs(i) == n ? 0.5 : 1.0) * (std::abs(j) == n ? 0.5 : 1.0) * cell;
      const double e = std::exp(-rho.eval({z}));
      const double decay = 1 / ((1 + std::norm(z)) * (1 + std::norm(z)));
      const Complex p = psi(z);
      const double density = 2 * std::norm(p) * e * decay;
      lhs += w * density;
      rhs += w * eta.eta(z) * eta.eta(z) * e;
      if (correction) fixed += w * 2 * std::norm(p - correction(z)) * e * decay;
      if (std::abs(i) == n || std::abs(j) == n) rep.boundary_density = std::max(rep.boundary_density, density);
    }
  rep.lhs = lhs;
  rep.rhs = rhs;
  auto holds = [&](double l) { return l <= rhs * (1 + opts.slack) + opts.slack; };
  rep.consistent = holds(lhs);
  if (!rep.consistent && correction) {
    rep.corrected = true;
    rep.lhs_corrected = fixed;
    rep.consistent = holds(fixed);
  }
  return rep;
}

std::function<Complex(Complex)> sinc_tail_correction(const CauchySolver& psi, const GsOracle& gs) {
  const Complex total = psi.total();
  return [total, gs](Complex z) {
    if (std::abs(z) < 1e-8) return Complex(0);
    Complex e = 1;
    for (std::size_t n = 1; n <= gs.terms; ++n) {
      const Complex w = gs.c * z / std::pow(static_cast<double>(n), gs.alpha);
      e *= std::abs(w) < 1e-8 ? Complex(1) - w * w / 6.0 : std::sin(w) / w;
    }
    return total * (Complex(1) - e) / z;
  };
}

}  // namespace carrier
