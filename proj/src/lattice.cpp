#include <carrier/lattice.hpp>

#include <algorithm>
#include <sstream>

namespace carrier {

Poset::Poset(std::vector<std::string> elements, std::vector<std::vector<bool>> leq)
    : elements_(std::move(elements)), leq_(std::move(leq)) {
  const auto n = elements_.size();
  if (n > kMaxPosetSize) throw NotAPoset("more than 64 elements");
  if (leq_.size() != n) throw NotAPoset("relation table has wrong row count");
  for (const auto& row : leq_)
    if (row.size() != n) throw NotAPoset("relation table is not square");
  for (std::size_t i = 0; i < n; ++i)
    if (!leq_[i][i]) throw NotAPoset("not reflexive at " + elements_[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq_[i][j] && leq_[j][i])
        throw NotAPoset("not antisymmetric: " + elements_[i] + ", " + elements_[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq_[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[j][k] && !leq_[i][k])
          throw NotAPoset("not transitive: (" + elements_[i] + ", " + elements_[j] + ", " +
                          elements_[k] + ")");
    }
}

std::optional<std::size_t> Poset::find(const std::string& name) const {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

IndexSet Poset::down_set(std::size_t a) const {
  IndexSet s;
  for (std::size_t i = 0; i < size(); ++i)
    if (leq_[i][a]) s.add(i);
  return s;
}

IndexSet Poset::up_set(std::size_t a) const {
  IndexSet s;
  for (std::size_t i = 0; i < size(); ++i)
    if (leq_[a][i]) s.add(i);
  return s;
}

IndexSet Poset::upper_bounds(std::size_t a, std::size_t b) const { return up_set(a) & up_set(b); }
IndexSet Poset::lower_bounds(std::size_t a, std::size_t b) const {
  return down_set(a) & down_set(b);
}

std::optional<std::size_t> Poset::greatest(IndexSet s) const {
  const auto m = s.members();
  for (auto c : m)
    if (std::all_of(m.begin(), m.end(), [&](auto o) { return leq_[o][c]; })) return c;
  return std::nullopt;
}

std::optional<std::size_t> Poset::least(IndexSet s) const {
  const auto m = s.members();
  for (auto c : m)
    if (std::all_of(m.begin(), m.end(), [&](auto o) { return leq_[c][o]; })) return c;
  return std::nullopt;
}

std::variant<QuasiLattice, LatticeDiagnostic> validate_quasi_lattice(const Poset& p) {
  const auto n = p.size();
  QuasiLattice q;
  q.poset_ = p;
  q.meet_.assign(n, std::vector<std::size_t>(n, kUndefined));
  q.join_.assign(n, std::vector<std::size_t>(n, kUndefined));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto inf = p.greatest(p.lower_bounds(a, b));
      if (!inf)
        return LatticeDiagnostic{LatticeDiagnostic::Reason::kNoInfimum, a, b,
                                 "no infimum for {" + p.name(a) + ", " + p.name(b) + "}"};
      q.meet_[a][b] = *inf;
      const auto ub = p.upper_bounds(a, b);
      if (ub.empty()) continue;
      const auto sup = p.least(ub);
      if (!sup)
        return LatticeDiagnostic{LatticeDiagnostic::Reason::kNoSupremum, a, b,
                                 "bounded pair {" + p.name(a) + ", " + p.name(b) +
                                     "} has no supremum"};
      q.join_[a][b] = *sup;
    }
  return q;
}

QuasiLattice require_quasi_lattice(const Poset& p) {
  auto r = validate_quasi_lattice(p);
  if (auto* d = std::get_if<LatticeDiagnostic>(&r)) throw NotQuasiLattice(d->message);
  return std::get<QuasiLattice>(std::move(r));
}

std::size_t QuasiLattice::join_of(IndexSet family) const {
  const auto m = family.members();
  if (m.empty()) return kUndefined;
  auto acc = m.front();
  for (std::size_t i = 1; i < m.size() && acc != kUndefined; ++i) acc = join(acc, m[i]);
  return acc;
}

std::size_t QuasiLattice::meet_of(IndexSet family) const {
  const auto m = family.members();
  if (m.empty()) return kUndefined;
  auto acc = m.front();
  for (std::size_t i = 1; i < m.size(); ++i) acc = meet(acc, m[i]);
  return acc;
}

DistributivityResult is_distributive(const QuasiLattice& q) {
  const auto n = q.size();
  for (std::size_t g2 = 0; g2 < n; ++g2)
    for (std::size_t g3 = 0; g3 < n; ++g3) {
      const auto j = q.join(g2, g3);
      if (j == kUndefined) continue;
      for (std::size_t g1 = 0; g1 < n; ++g1) {
        // (g1^g2) and (g1^g3) are bounded above by j, so their join exists
        const auto rhs = q.join(q.meet(g1, g2), q.meet(g1, g3));
        if (q.meet(g1, j) != rhs) return {false, std::array{g1, g2, g3}};
      }
    }
  return {};
}

bool is_hereditary(const Poset& p, IndexSet s) {
  for (auto g : s.members())
    if (!p.down_set(g).subset_of(s)) return false;
  return true;
}

bool is_meet_closed(const QuasiLattice& q, IndexSet s) {
  const auto m = s.members();
  for (auto a : m)
    for (auto b : m)
      if (!s.contains(q.meet(a, b))) return false;
  return true;
}

IndexSet meet_closure(const QuasiLattice& q, IndexSet generators) {
  IndexSet closed = generators;
  for (bool grew = true; grew;) {
    grew = false;
    const auto m = closed.members();
    for (auto a : m)
      for (auto b : m) {
        const auto c = q.meet(a, b);
        if (!closed.contains(c)) {
          closed.add(c);
          grew = true;
        }
      }
  }
  return closed;
}

OrderStatistics order_statistics(const QuasiLattice& q, IndexSet j) {
  if (j.empty()) throw JNotMeetClosed("J is empty");
  if (!is_meet_closed(q, j)) throw JNotMeetClosed("J is not closed under meets");
  const auto& p = q.poset();
  OrderStatistics st;
  st.k.assign(q.size(), 0);
  for (auto g : j.members()) st.k[g] = (p.up_set(g) & j).size();
  for (std::size_t n = 1; n <= j.size(); ++n) {
    IndexSet c;
    for (auto g : j.members())
      if (st.k[g] >= n) c.add(g);
    st.chains.push_back(c);
  }
  st.infimum = q.meet_of(j);
  if (st.chains.back() != IndexSet::of({st.infimum}))
    throw JNotMeetClosed("C_|J| is not the singleton {inf J}");
  return st;
}

std::string subset_name(std::uint64_t mask, std::size_t points) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i = 0; i < points; ++i)
    if ((mask >> i) & 1U) {
      os << (first ? "" : ",") << (i + 1);
      first = false;
    }
  os << '}';
  return os.str();
}

Poset subset_family_poset(const std::vector<std::uint64_t>& family, std::size_t points) {
  std::vector<std::string> names;
  for (auto m : family) names.push_back(subset_name(m, points));
  return Poset::from_relation(std::move(names), [&](std::size_t a, std::size_t b) {
    return (family[a] & ~family[b]) == 0;
  });
}

Poset powerset_poset(std::size_t points) {
  std::vector<std::uint64_t> family;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << points); ++m) family.push_back(m);
  return subset_family_poset(family, points);
}

Poset chain_poset(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  return Poset::from_relation(std::move(names), [](std::size_t a, std::size_t b) { return a <= b; });
}

}  // namespace carrier
