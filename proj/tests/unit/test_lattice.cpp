#include <carrier/lattice.hpp>
#include <doctest.h>

using namespace carrier;

TEST_CASE("powerset is a distributive lattice") {
  auto q = require_quasi_lattice(powerset_poset(3));
  CHECK(q.size() == 8);
  CHECK(q.join(1, 2) == 3);
  CHECK(q.meet(3, 6) == 2);
  CHECK(is_distributive(q).distributive);
}

TEST_CASE("poset axioms are checked") {
  CHECK_THROWS_AS(Poset({"a", "b"}, {{true, true}, {true, true}}), NotAPoset);
  CHECK_THROWS_AS(Poset({"a"}, {{false}}), NotAPoset);
  CHECK_THROWS_AS(Poset({"a", "b", "c"},
                        {{true, true, false}, {false, true, true}, {false, false, true}}),
                  NotAPoset);
}

TEST_CASE("two incomparable minima fail the meet axiom") {
  auto p = Poset::from_relation({"a", "b", "top"}, [](std::size_t x, std::size_t y) {
    return x == y || y == 2;
  });
  auto r = validate_quasi_lattice(p);
  REQUIRE(std::holds_alternative<LatticeDiagnostic>(r));
  CHECK(std::get<LatticeDiagnostic>(r).reason == LatticeDiagnostic::Reason::kNoInfimum);
}

TEST_CASE("bounded pair with two minimal upper bounds has no supremum") {
  // bottom < a, b < c, d
  auto p = Poset::from_relation({"0", "a", "b", "c", "d"}, [](std::size_t x, std::size_t y) {
    if (x == y || x == 0) return true;
    return (x == 1 || x == 2) && (y == 3 || y == 4);
  });
  auto r = validate_quasi_lattice(p);
  REQUIRE(std::holds_alternative<LatticeDiagnostic>(r));
  CHECK(std::get<LatticeDiagnostic>(r).reason == LatticeDiagnostic::Reason::kNoSupremum);
}

TEST_CASE("unbounded pairs are allowed") {
  auto p = subset_family_poset({0b00, 0b01, 0b10}, 2);
  auto q = require_quasi_lattice(p);
  CHECK(q.join(1, 2) == kUndefined);
  CHECK(q.meet(1, 2) == 0);
  CHECK(is_distributive(q).distributive);
}

TEST_CASE("M3 is not distributive") {
  auto p = Poset::from_relation({"0", "a", "b", "c", "1"}, [](std::size_t x, std::size_t y) {
    return x == y || x == 0 || y == 4;
  });
  auto d = is_distributive(require_quasi_lattice(p));
  CHECK_FALSE(d.distributive);
  CHECK(d.witness.has_value());
}

TEST_CASE("order statistics on a meet-closed family") {
  auto q = require_quasi_lattice(powerset_poset(2));
  IndexSet j = IndexSet::of({0, 1, 2, 3});
  auto st = order_statistics(q, j);
  CHECK(st.k[3] == 1);
  CHECK(st.k[1] == 2);
  CHECK(st.k[0] == 4);
  CHECK(st.chains.size() == 4);
  CHECK(st.chains[3] == IndexSet::of({0}));
  CHECK(st.infimum == 0);
  CHECK_THROWS_AS(order_statistics(q, IndexSet::of({1, 2})), JNotMeetClosed);
  CHECK(meet_closure(q, IndexSet::of({1, 2})) == IndexSet::of({0, 1, 2}));
  CHECK(is_hereditary(q.poset(), IndexSet::of({0, 1})));
  CHECK_FALSE(is_hereditary(q.poset(), IndexSet::of({1})));
}
