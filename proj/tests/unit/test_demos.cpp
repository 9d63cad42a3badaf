#include <carrier/demos.hpp>
#include <carrier/errors.hpp>
#include <doctest.h>

#include <cmath>

using namespace carrier;

namespace {

Vector v(std::initializer_list<long> xs) {
  Vector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Cone ray(long s) { return Cone::polyhedral(1, {v({s})}); }

WeightParams params(double alpha, double a, double b, const Cone& u) { return {alpha, a, b, u}; }

SplittingInputs line_split() {
  SplittingInputs in;
  in.v = ray(1);
  in.w = ray(1);
  in.w_complement = ray(-1);
  in.f = exponential_sample({Complex(-1, 0)});
  return in;
}

// 2 int_0^1 s(r) r dr for a radial datum, by a fine trapezoid in r.
double radial_total(const DbarDatum& d) {
  const int n = 200000;
  double s = 0;
  for (int i = 1; i < n; ++i) {
    const double r = static_cast<double>(i) / n;
    s += d.eta(Complex(r, 0)) * r;
  }
  return 2 * s / n;
}

}  // namespace

TEST_CASE("norms of the zero function vanish") {
  const auto p = params(2, 1, 1, Cone::whole(1));
  CHECK(sup_norm_estimate(zero_sample(1), p, {5, 5, 21}).value == 0);
  CHECK(l2_norm_estimate(zero_sample(1), p, {5, 5, 21}).value == 0);
}

TEST_CASE("exp(-z) has a finite norm on the positive ray only") {
  const auto f = exponential_sample({Complex(-1, 0)});
  double prev = 0;
  for (double half : {5.0, 10.0, 20.0}) {
    const auto e = sup_norm_scan(f, params(1, 2, 3, ray(1)), {half, half, 81});
    CHECK(e.value >= prev);
    CHECK(e.value == doctest::Approx(1.0));
    prev = e.value;
  }
  CHECK_NOTHROW(sup_norm_estimate(f, params(1, 2, 3, ray(1)), {40, 10, 81}));
  std::vector<double> wrong;
  for (double half : {5.0, 10.0, 20.0}) wrong.push_back(sup_norm_scan(f, params(1, 2, 3, ray(-1)), {half, half, 81}).value);
  CHECK(wrong[1] > 100 * wrong[0]);
  CHECK(wrong[2] > 100 * wrong[1]);
  CHECK_THROWS_AS(sup_norm_estimate(f, params(1, 2, 3, ray(-1)), {20, 20, 81}), BoundaryNotNegligible);
}

TEST_CASE("L2 norm of exp(-z) against the closed form") {
  // |f|^2 e^{-2 sigma} = e^{-x - 6|y|} for x > 0 and e^{-3|x| - 6|y|} for x < 0
  const auto f = exponential_sample({Complex(-1, 0)});
  const auto e = l2_norm_estimate(f, params(1, 2, 3, ray(1)), {30, 5, 601});
  CHECK(e.value == doctest::Approx(2.0 / 3).epsilon(2e-3));
  CHECK_THROWS_AS(l2_norm_estimate(f, params(1, 2, 3, ray(1)), {5, 5, 101}), BoundaryNotNegligible);
}

TEST_CASE("approximating sequence") {
  CHECK(lemma2_eta(1, 2, 2) == doctest::Approx(std::min(1 - std::sqrt(0.5), 0.5)));
  for (double alpha : {1.0, 1.5, 3.0})
    for (double a : {0.5, 1.0, 4.0}) CHECK(lemma2_eta(a, a * 1.01, alpha) > 0);

  Lemma2Params p;
  p.w = ray(1);
  p.w_prime = ray(1);
  p.grid = {20, 20, 81};
  const auto g = exponential_sample({Complex(-2, 0)});
  const auto f = exponential_sample({Complex(-1, 0)});
  const auto rep = lemma2_sequence(g, f, p);
  CHECK(rep.passed());
  REQUIRE(rep.rows.size() == 16);
  CHECK(rep.gap_nonincreasing);
  // |g(e^{-z/n} - 1)| is O(1/n) on a compact set
  CHECK(rep.rows.back().pointwise_gap < rep.rows.front().pointwise_gap / 10);

  CHECK_THROWS_AS(lemma2_sequence(g, exponential_sample({Complex(1, 0)}), [&] {
                    auto q = p;
                    q.a_prime = 0.5;
                    return q;
                  }()),
                  PreconditionFailed);
  const EntireSample shifted{"2 exp(-z)", 1, [](const CVector& z) { return 2.0 * std::exp(-z[0]); }};
  CHECK_THROWS_AS(lemma2_sequence(g, shifted, p), PreconditionFailed);
}

TEST_CASE("bump has unit mass and the right gradient") {
  for (std::size_t k : {1, 2}) {
    const Bump b(k, 0.5);
    const int n = k == 1 ? 4000 : 600;
    const double h = 1.0 / n;
    double mass = 0;
    if (k == 1)
      for (int i = 0; i <= n; ++i) mass += b({-0.5 + i * h}) * h;
    else
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) mass += b({-0.5 + i * h, -0.5 + j * h}) * h * h;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  }
  const Bump b(2, 0.5);
  CHECK(b({0.5, 0.0}) == 0);
  CHECK(b({0.4, 0.4}) == 0);
  const RealVector x{0.1, -0.2};
  const auto g = b.gradient(x);
  const double h = 1e-6;
  CHECK(g[0] == doctest::Approx((b({0.1 + h, -0.2}) - b({0.1 - h, -0.2})) / (2 * h)).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx((b({0.1, -0.2 + h}) - b({0.1, -0.2 - h})) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("mollifier splitting on the line") {
  const auto in = line_split();
  const Bump g0(1, in.delta);
  const auto deep = mollifier_parts(in, g0, {3.0});
  CHECK(deep.g2 == 1);
  CHECK(deep.g1 == 0);
  CHECK(deep.grad_g2[0] == 0);
  const auto mid = mollifier_parts(in, g0, {0.0});
  CHECK(mid.g1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid.grad_g2[0] == doctest::Approx(g0({0.0})));
  for (double x : {-0.45, -0.2, 0.1, 0.3, 0.49}) {
    const auto p = mollifier_parts(in, g0, {x});
    CHECK(p.g1 + p.g2 == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto rep = mollifier_splitting(in);
  CHECK(rep.passed());
  CHECK(rep.theta == 1);
  REQUIRE(rep.dbar);
  for (double o : rep.dbar->orders) CHECK(o == doctest::Approx(2.0).epsilon(0.05));
  CHECK(rep.dbar->richardson_error < rep.dbar->errors.back() / 10);
}

TEST_CASE("mollifier splitting in the plane") {
  SplittingInputs in;
  in.v = Cone::polyhedral(2, {v({2, 1}), v({1, 2})});
  in.w = Cone::polyhedral(2, {v({1, 0}), v({0, 1})});
  in.w_complement = Cone(2, {{v({1, 0}), v({0, -1})}, {v({0, -1}), v({-1, 0})}, {v({-1, 0}), v({0, 1})}});
  in.f = exponential_sample({Complex(-1, 0), Complex(-1, 0)});
  in.samples = 60;
  in.tolerance = 1e-9;
  const auto rep = mollifier_splitting(in);
  CHECK(rep.passed());
  CHECK(!rep.dbar);
  CHECK(rep.support.samples > 0);
  CHECK(rep.off_v.samples > 0);

  in.v = Cone::polyhedral(2, {v({1, 0}), v({1, -1})});
  CHECK_THROWS_AS(mollifier_splitting(in), PreconditionFailed);
}

TEST_CASE("Cauchy transform of the smoothed disc") {
  const auto d = mollified_disc(0.25);
  const CauchySolver psi(d, {64, 64});
  for (const auto& z : disc_grid(0, 0.75, 0.25)) CHECK(std::abs(psi(z) - std::conj(z)) < 1e-5);
  CHECK(psi.total().real() == doctest::Approx(radial_total(d)).epsilon(1e-6));
  // outside the support psi = total / z for a radial datum
  for (Complex z : {Complex(3, 1), Complex(-2.5, 0), Complex(0, 4)}) CHECK(std::abs(psi(z) - psi.total() / z) < 1e-10);
}

TEST_CASE("Cauchy transform basics") {
  const auto zero = dbar_solve_1d(zero_datum(), {Complex(0, 0), Complex(1, 2)});
  CHECK(zero[0] == Complex(0));
  CHECK(zero[1] == Complex(0));
  const Complex c(1.5, -0.5);
  const CauchySolver a(mollified_disc(0.3), {48, 48}), b(mollified_disc(0.3, c), {48, 48});
  for (Complex z : {Complex(0.2, 0.1), Complex(-0.9, 0.3), Complex(1.4, 0)})
    CHECK(std::abs(a(z) - b(z + c)) < 1e-12);
  CHECK(a.residual({Complex(0.5, 0)}, 1e-3) < 0.05);
}

TEST_CASE("refinement study converges") {
  const auto st = dbar_refinement_study(0.25, {16, 32, 64}, 0.25, 1e-3);
  REQUIRE(st.errors.size() == 3);
  CHECK(st.errors[2] < st.errors[1]);
  CHECK(st.min_order() >= 1.8);
  CHECK_THROWS_AS(dbar_refinement_study(0.25, {16}), PreconditionFailed);
}

TEST_CASE("weighted L2 estimate") {
  HormanderOptions opts;
  opts.half_width = 4;
  opts.spacing = 0.2;
  const WeightEvaluator flat{"0", [](const CVector&) { return 0.0; }, {}};
  const auto none = hormander_check(CauchySolver(zero_datum()), flat, opts);
  CHECK(none.lhs == 0);
  CHECK(none.rhs == 0);
  CHECK(none.consistent);

  const CauchySolver psi(mollified_disc(0.25));
  const auto rep = hormander_check(psi, flat, opts);
  CHECK(rep.lhs > 0);
  CHECK(rep.rhs > 0);
  CHECK(rep.consistent);
  CHECK(rep.residual < 1e-3);
  CHECK_THROWS_AS(hormander_check(CauchySolver(mollified_disc(0.25), {16, 16}), flat, opts), ResidualTooLarge);

  // the correction is entire, so it leaves dbar psi alone
  const auto gs = build_gs_oracle(1, 2.0, 1, 20);
  const auto corr = sinc_tail_correction(psi, gs);
  const Complex z(0.7, 0.4), i(0, 1);
  const double h = 1e-4;
  const Complex dbar = 0.5 * ((corr(z + h) - corr(z - h)) / (2 * h) + i * (corr(z + i * h) - corr(z - i * h)) / (2 * h));
  CHECK(std::abs(dbar) < 1e-7);
}
