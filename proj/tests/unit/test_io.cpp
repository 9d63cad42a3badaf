#include <carrier/io.hpp>
#include <carrier/replay.hpp>
#include <doctest.h>

using namespace carrier;

namespace {

DecompositionCertificate sample_certificate() {
  std::mt19937_64 rng(21);
  SetFamily f{3, {}};
  for (std::uint64_t m = 0; m < 8; ++m) f.members.push_back(m);
  for (;;) {
    auto l = random_regular_morphism(f, 2, rng);
    const auto& y = l.target();
    IndexSet i = y.index().down_set(1);
    IndexSet j = IndexSet::all(8);
    // Lx - y with y in M_I and Lx in N_J gives an LHS element
    const auto nj = relation_space(y, j);
    const auto lhs = intersect(nj, sum(member_space(y, i), image(dense_map(l))));
    if (lhs.dim() == 0) continue;
    Vector v = zero_vector(y.total_dim());
    for (const auto& b : lhs.basis()) v = add(v, b);
    auto c = lemma31_membership(l, i, j, SumVector::from_dense(y, v));
    if (c.glued_steps > 0) return c;
  }
}

}  // namespace

TEST_CASE("systems round-trip through JSON") {
  SetFamily f{2, {0, 1, 2, 3}};
  auto x = generate_free_model(f, {2, 1});
  auto back = io::system_from_json(io::system_to_json(x));
  CHECK(back.dims() == x.dims());
  CHECK(back.links() == x.links());
  CHECK(io::rational_from_json("-6/4") == Rational(-3, 2));
  CHECK(io::rational_from_json(5) == Rational(5));
  CHECK_THROWS_AS(io::rational_from_json("x"), SchemaError);
  auto ff = io::family_from_json(io::family_to_json(f));
  CHECK(ff.members == f.members);
}

TEST_CASE("oversized systems are rejected") {
  auto j = io::system_to_json(generate_free_model(SetFamily{1, {0, 1}}, {9}));
  CHECK_THROWS_AS(io::system_from_json(j), SchemaError);
}

TEST_CASE("certificates replay and tampering is detected") {
  auto c = sample_certificate();
  auto j = io::certificate_to_json(c);
  auto r = replay_certificate(j);
  CHECK(r.ok);
  CHECK(r.identities_checked > 10);

  auto bad = j;
  auto& v = bad["x_terms"][0]["vector"];
  REQUIRE(!v.empty());
  v[0] = to_string(io::rational_from_json(v[0]) + 1);
  auto rb = replay_certificate(bad);
  CHECK_FALSE(rb.ok);
  CHECK(rb.failure.find("input") != std::string::npos);

  auto bad2 = j;
  bad2["stages"].back()["family"].push_back(bad2["x_terms"][0]);
  CHECK_FALSE(replay_certificate(bad2).ok);

  auto bad3 = j;
  bad3["I"].push_back(bad3["J"].back());
  CHECK_FALSE(replay_certificate(bad3).ok);
}
