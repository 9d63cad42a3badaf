#include <carrier/errors.hpp>
#include <carrier/weights.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace carrier;

namespace {

Vector v(std::initializer_list<long> xs) {
  Vector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// log|sin z / z| straight from std::sin, for moderate |z| away from 0.
double theta_direct(Complex z) { return std::log(std::abs(std::sin(z) / z)); }

std::vector<CVector> random_points(std::size_t k, int n, double sx, double sy, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<CVector> out;
  for (int i = 0; i < n; ++i) {
    CVector z(k);
    for (auto& w : z) w = {sx * u(rng), sy * u(rng)};
    out.push_back(z);
  }
  return out;
}

std::vector<CVector> unit_directions(std::size_t k, int n, std::uint64_t seed) {
  auto d = random_points(k, n, 1, 1, seed);
  for (auto& z : d) {
    double m = 0;
    for (auto w : z) m = std::max(m, std::abs(w));
    for (auto& w : z) w /= m;
  }
  return d;
}

// Closed complement of the open cone between (2, 1) and (1, 2).
Cone off_diagonal_wedge() {
  return Cone(2, {{v({2, 1}), v({1, -1})},
                  {v({1, -1}), v({-1, -1})},
                  {v({-1, -1}), v({-1, 1})},
                  {v({-1, 1}), v({1, 2})}});
}

const std::vector<double> kRadii{0.01, 0.1, 1.0};

}  // namespace

TEST_CASE("theta values") {
  CHECK(theta(0) == 0);
  CHECK(theta(M_PI / 2) == doctest::Approx(std::log(2 / M_PI)).epsilon(1e-15));
  CHECK(theta(M_PI) == -std::numeric_limits<double>::infinity());
  CHECK(theta(-2 * M_PI) == -std::numeric_limits<double>::infinity());
  for (Complex z : {Complex(1, 2), Complex(-3, 0.5), Complex(0.7, -8), Complex(2.5, 0)})
    CHECK(theta(z) == doctest::Approx(theta_direct(z)).epsilon(1e-12));
  // small |z|: log(1 - z^2/6 + ...) ~ -Re z^2 / 6
  CHECK(theta(Complex(1e-4, 0)) == doctest::Approx(-1e-8 / 6).epsilon(1e-6));
  // large |y|: |sin z| ~ e^|y| / 2
  CHECK(theta(Complex(0.3, 40)) == doctest::Approx(40 - std::log(2.0) - std::log(std::hypot(0.3, 40))).epsilon(1e-12));
}

TEST_CASE("mu is continuous at pi/2 and decreasing") {
  CHECK(mu(M_PI / 2) == doctest::Approx(-std::log(M_PI / 2)).epsilon(1e-14));
  CHECK(mu(M_PI / 2 + 1e-9) == doctest::Approx(mu(M_PI / 2 - 1e-9)).epsilon(1e-8));
  CHECK(mu(0) == 0);
  CHECK(mu(3) == doctest::Approx(-std::log(3.0)));
  double prev = mu(0);
  for (int i = 1; i <= 1000; ++i) {
    const double t = 10.0 * i / 1000;
    CHECK(mu(t) < prev);
    prev = mu(t);
  }
}

TEST_CASE("sigma weight on the quadrant") {
  WeightParams p;
  p.alpha = 1;
  p.a = 1;
  p.b = 1;
  p.u = Cone::polyhedral(2, {v({1, 0}), v({0, 1})});
  // -|(-1,-1)| + delta_U((-1,-1)) + 0 = -1 + 1
  CHECK(sigma_weight(p, {Complex(-1, 0), Complex(-1, 0)}) == doctest::Approx(0.0));
  CHECK(sigma_weight(p, {Complex(2, 1), Complex(3, -2)}) == doctest::Approx(-3 + 2));
  p.alpha = 0.5;
  CHECK_THROWS_AS(sigma_weight(p, {Complex(1, 0), Complex(1, 0)}), PreconditionFailed);
}

TEST_CASE("theta inequalities on random samples") {
  const auto rep = verify_lemma4(20000, 2000, 3);
  CHECK(rep.lower.passed());
  CHECK(rep.upper.passed());
  CHECK(rep.auxiliary.passed());
  CHECK(rep.mu_lower.passed());
  CHECK(rep.mu_upper.passed());
  CHECK(rep.decreasing);
  CHECK(rep.lower.samples >= 20000);
}

TEST_CASE("inequality check bookkeeping") {
  InequalityCheck c;
  c.record(1, 2, 0, {0});
  c.record(-std::numeric_limits<double>::infinity(), -5, 0, {1});
  CHECK(c.passed());
  CHECK(c.worst_margin == doctest::Approx(1));
  c.record(3, 2, 1e-12, {2});
  CHECK(c.failures == 1);
  REQUIRE(c.witness);
  CHECK((*c.witness)[0] == 2);
}

TEST_CASE("Psi bounds") {
  const auto psi = build_psi(1, 2, 1);
  CHECK(psi.x0 >= 1);
  CHECK(psi.x0 <= 2);
  CHECK(psi.lambda > 0);
  CHECK(psi({psi.x0, 0}) == doctest::Approx(psi.x0).epsilon(1e-9));
  // lambda is the max of mu-tilde(x)/x: no grid point beats it
  for (int i = 0; i <= 500; ++i) {
    const double x = 1 + i / 500.0;
    CHECK(psi.mu_tilde(x) / x <= psi.lambda * (1 + 1e-12));
  }
  CHECK(verify_psi(psi, 10000, 5, 1e-12).passed());
  CHECK_THROWS_AS(build_psi(2, 1, 1), PreconditionFailed);
  CHECK_THROWS_AS(build_psi(1, 2, 0), PreconditionFailed);
}

TEST_CASE("Phi on a ray is max(l(x), 0)") {
  const auto k = Cone::polyhedral(1, {v({1})});
  const auto phi = build_phi(k, Cone::polyhedral(1, {v({-1})}), v({2}), 1, 2, 0);
  CHECK(phi.injected({Complex(3, 7)}) == doctest::Approx(6));
  CHECK(phi.injected({Complex(-3, 7)}) == 0);
  CHECK(phi.lambda_k == doctest::Approx(2));
}

TEST_CASE("Phi of the zero cone vanishes") {
  const auto phi = build_phi(Cone::zero(2), Cone::whole(2), v({1, 1}), 1, 2, 0);
  CHECK(phi.trivial());
  CHECK(phi.injected({Complex(3, 1), Complex(-2, 4)}) == 0);
}

TEST_CASE("Phi bounds in R^2") {
  const auto k = Cone::polyhedral(2, {v({1, 1})});
  const auto outside = off_diagonal_wedge();
  const auto phi = build_phi(k, outside, v({1, 1}), 1, 2, 0);
  CHECK(phi.d > 0);
  CHECK(phi.m > 0);
  CHECK(phi.big_m >= 1);
  const auto rep = verify_phi(phi, outside, 3000, 7, 1e-9);
  CHECK(rep.lower.passed());
  CHECK(rep.upper.passed());
  CHECK(rep.outside.passed());
  CHECK(rep.on_cone.passed());
}

TEST_CASE("Phi rejects bad inputs") {
  const auto k = Cone::polyhedral(2, {v({1, 1})});
  const auto outside = Cone::polyhedral(2, {v({1, 0}), v({0, -1})});
  CHECK_THROWS_AS(build_phi(k, outside, v({-1, 0}), 1, 2, 0), PreconditionFailed);
  CHECK_THROWS_AS(build_phi(k, Cone::polyhedral(2, {v({1, 0}), v({0, 1})}), v({1, 1}), 1, 2, 0),
                  NotANeighborhood);
  CHECK_THROWS_AS(build_phi(k, outside, v({1, 1, 1}), 1, 2, 0), DimensionMismatch);
}

TEST_CASE("lattice weight bounds") {
  const auto s = build_gs_oracle(2, 2.0, 1, 20);
  CHECK(s({Complex(0, 0), Complex(0, 0)}) == doctest::Approx(-s.c_up / s.beta_up));
  CHECK(s.raw({Complex(0, 0), Complex(0, 0)}) == 0);
  CHECK(s.beta_up > 0);
  CHECK(s.gamma >= 1);
  CHECK(verify_gs_oracle(s, 5000, 11, 1e-9).passed());
  CHECK_THROWS_AS(build_gs_oracle(2, 1.0), PreconditionFailed);
}

TEST_CASE("rho in R^2") {
  RhoInputs in;
  in.u = Cone::polyhedral(2, {v({1, 0}), v({0, 1})});
  in.k1 = Cone::polyhedral(2, {v({4, 1})});
  in.k2 = Cone::polyhedral(2, {v({1, 4})});
  const auto rho = build_rho(in);
  CHECK(rho.eps == Rational(1, 4));
  CHECK(rho.theta1 == doctest::Approx(0.2));
  // l separates: at least kappa on the unit sphere of V1
  for (const auto& g : rho.v1.unit_generators()) CHECK(l1_norm(g) > 0);
  const auto rep = verify_rho(rho, in, 2000, 13, 1e-9);
  CHECK(rep.to_u.passed());
  CHECK(rep.to_k1.passed());
  CHECK(rep.near_k2.passed());
  CHECK(rep.in_v1.passed());
  CHECK(rep.l_vs_u.passed());
}

TEST_CASE("rho rejects meeting cones") {
  RhoInputs in;
  in.u = Cone::polyhedral(2, {v({1, 0}), v({0, 1})});
  in.k1 = Cone::polyhedral(2, {v({1, 1})});
  in.k2 = Cone::polyhedral(2, {v({1, 0}), v({0, 1})});
  CHECK_THROWS_AS(build_rho(in), ConesIntersect);
  in.k2 = Cone::polyhedral(2, {v({-1, 0})});
  CHECK_THROWS_AS(build_rho(in), PreconditionFailed);
}

TEST_CASE("sub-mean-value tester") {
  SUBCASE("theta passes") {
    const auto rep = check_plurisubharmonic([](const CVector& z) { return theta(z[0]); },
                                            random_points(1, 100, 6, 3, 1), {{Complex(1, 0)}}, kRadii);
    CHECK(rep.passed());
    CHECK(rep.checks == 300);
  }
  SUBCASE("a -inf center passes") {
    const auto rep = check_plurisubharmonic([](const CVector& z) { return theta(z[0]); },
                                            {{Complex(M_PI, 0)}}, {{Complex(1, 0)}}, kRadii);
    CHECK(rep.passed());
  }
  SUBCASE("lattice weight passes") {
    const auto s = build_gs_oracle(2, 2.0, 1, 20);
    const auto rep = check_plurisubharmonic([&](const CVector& z) { return s(z); },
                                            random_points(2, 20, 20, 3, 2), unit_directions(2, 3, 3), kRadii);
    CHECK(rep.passed());
  }
  SUBCASE("Phi-hat passes") {
    const auto k = Cone::polyhedral(2, {v({1, 1})});
    const auto phi = build_phi(k, off_diagonal_wedge(), v({1, 1}), 1, 2, 0);
    const auto rep = check_plurisubharmonic([&](const CVector& z) { return phi.pure(z); },
                                            random_points(2, 10, 10, 3, 4), unit_directions(2, 3, 5), kRadii);
    CHECK(rep.passed());
  }
  SUBCASE("affine functions are harmonic") {
    const auto rep = check_plurisubharmonic(
        [](const CVector& z) { return 3 * z[0].real() - 2 * z[1].imag() + 1; }, random_points(2, 10, 5, 5, 6),
        unit_directions(2, 3, 7), kRadii);
    CHECK(rep.passed());
  }
  SUBCASE("-|x|^{1/2} fails at 0") {
    const auto rep = check_plurisubharmonic(
        [](const CVector& z) { return -std::sqrt(std::fabs(z[0].real())); }, {{Complex(0, 0)}},
        {{Complex(1, 0)}}, kRadii);
    CHECK(rep.failures == 3);
    CHECK(rep.max_nodes_used == 65536);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations[0].mean < rep.violations[0].value);
  }
}
