#include <carrier/localization.hpp>

#include <algorithm>
#include <numeric>

namespace carrier {

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::kI: return "I";
    case Axiom::kII: return "II";
    case Axiom::kIII: return "III";
  }
  return "?";
}

const AxiomVerdict& PrelocReport::verdict(Axiom a) const {
  switch (a) {
    case Axiom::kI: return axiom_i;
    case Axiom::kII: return axiom_ii;
    default: return axiom_iii;
  }
}

namespace {

Vector concat(const Vector& a, const Vector& b) {
  Vector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Vector unit(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v[i] = 1;
  return v;
}

// Columns of the joint map X(g1) + X(g2) -> X(top).
Matrix join_map(const InductiveSystem& x, std::size_t g1, std::size_t g2, std::size_t top) {
  return hstack({x.link(g1, top), x.link(g2, top)}, x.dim(top));
}

// (x1, x2) -> (link(g1,g) x1 - link(g2,g) x2); kernel is the equalizer.
Matrix equalizer_map(const InductiveSystem& x, std::size_t g1, std::size_t g2, std::size_t g) {
  return hstack({x.link(g1, g), -x.link(g2, g)}, x.dim(g));
}

// X(m) -> X(g1) + X(g2), the diagonal.
Matrix diagonal_map(const InductiveSystem& x, std::size_t m, std::size_t g1, std::size_t g2) {
  return vstack({x.link(m, g1), x.link(m, g2)}, x.dim(m));
}

}  // namespace

PrelocReport check_prelocalizable(const InductiveSystem& x) {
  const auto q = require_quasi_lattice(x.index());
  const auto& p = x.index();
  const auto n = x.size();
  PrelocReport r;

  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      if (!p.lt(g, h)) continue;
      ++r.axiom_i.cases_checked;
      if (r.axiom_i.witness) continue;
      const auto ker = null_space(x.link(g, h));
      if (!ker.empty()) {
        r.axiom_i.holds = false;
        r.axiom_i.witness = AxiomWitness{{g, h}, {ker.front()}};
      }
    }

  for (std::size_t g1 = 0; g1 < n; ++g1)
    for (std::size_t g2 = g1; g2 < n; ++g2) {
      const auto j = q.join(g1, g2);
      if (j == kUndefined) continue;
      ++r.axiom_ii.cases_checked;
      if (r.axiom_ii.witness) continue;
      const auto img = image(join_map(x, g1, g2, j));
      if (img.dim() == x.dim(j)) continue;
      for (std::size_t e = 0; e < x.dim(j); ++e)
        if (!img.contains(unit(x.dim(j), e))) {
          r.axiom_ii.holds = false;
          r.axiom_ii.witness = AxiomWitness{{g1, g2, j}, {unit(x.dim(j), e)}};
          break;
        }
    }

  for (std::size_t g1 = 0; g1 < n; ++g1)
    for (std::size_t g2 = g1; g2 < n; ++g2) {
      const auto bounds = p.upper_bounds(g1, g2);
      if (bounds.empty()) continue;
      const auto m = q.meet(g1, g2);
      const auto diag = image(diagonal_map(x, m, g1, g2));
      for (auto g : bounds.members()) {
        ++r.axiom_iii.cases_checked;
        if (r.axiom_iii.witness) continue;
        for (const auto& v : null_space(equalizer_map(x, g1, g2, g))) {
          if (diag.contains(v)) continue;
          Vector x1(v.begin(), v.begin() + x.dim(g1));
          Vector x2(v.begin() + x.dim(g1), v.end());
          r.axiom_iii.holds = false;
          r.axiom_iii.witness = AxiomWitness{{g1, g2, g, m}, {x1, x2}};
          break;
        }
      }
    }
  return r;
}

bool witness_falsifies(const InductiveSystem& x, Axiom a, const AxiomWitness& w) {
  const auto& p = x.index();
  const auto n = x.size();
  auto in_range = [&](std::size_t i) { return i < n; };
  if (!std::all_of(w.indices.begin(), w.indices.end(), in_range)) return false;
  switch (a) {
    case Axiom::kI: {
      if (w.indices.size() != 2 || w.vectors.size() != 1) return false;
      const auto g = w.indices[0], h = w.indices[1];
      const auto& v = w.vectors[0];
      return p.leq(g, h) && v.size() == x.dim(g) && !is_zero(v) && is_zero(x.link(g, h).apply(v));
    }
    case Axiom::kII: {
      if (w.indices.size() != 3 || w.vectors.size() != 1) return false;
      const auto g1 = w.indices[0], g2 = w.indices[1], j = w.indices[2];
      // j must be the least upper bound of {g1, g2}
      const auto ub = p.upper_bounds(g1, g2);
      if (!ub.contains(j)) return false;
      for (auto u : ub.members())
        if (!p.leq(j, u)) return false;
      const auto& v = w.vectors[0];
      if (v.size() != x.dim(j)) return false;
      return !solve(join_map(x, g1, g2, j), v).has_value();
    }
    case Axiom::kIII: {
      if (w.indices.size() != 4 || w.vectors.size() != 2) return false;
      const auto g1 = w.indices[0], g2 = w.indices[1], g = w.indices[2], m = w.indices[3];
      if (!p.leq(g1, g) || !p.leq(g2, g)) return false;
      const auto lb = p.lower_bounds(g1, g2);
      if (!lb.contains(m)) return false;
      for (auto b : lb.members())
        if (!p.leq(b, m)) return false;
      const auto& x1 = w.vectors[0];
      const auto& x2 = w.vectors[1];
      if (x1.size() != x.dim(g1) || x2.size() != x.dim(g2)) return false;
      if (x.link(g1, g).apply(x1) != x.link(g2, g).apply(x2)) return false;
      return !solve(diagonal_map(x, m, g1, g2), concat(x1, x2)).has_value();
    }
  }
  return false;
}

std::optional<std::pair<Vector, Vector>> split_along_join(const InductiveSystem& x,
                                                          const QuasiLattice& q, std::size_t g1,
                                                          std::size_t g2, const Vector& v) {
  const auto j = q.join(g1, g2);
  if (j == kUndefined) throw NotComparable("pair is not bounded above");
  const auto sol = solve(join_map(x, g1, g2, j), v);
  if (!sol) return std::nullopt;
  const auto& s = sol->particular;
  return std::pair{Vector(s.begin(), s.begin() + x.dim(g1)), Vector(s.begin() + x.dim(g1), s.end())};
}

std::optional<std::vector<Vector>> split_along_family(const InductiveSystem& x,
                                                      const std::vector<std::size_t>& family,
                                                      std::size_t top, const Vector& v) {
  std::vector<Matrix> blocks;
  for (auto g : family) blocks.push_back(x.link(g, top));
  const auto sol = solve(hstack(blocks, x.dim(top)), v);
  if (!sol) return std::nullopt;
  std::vector<Vector> parts;
  std::size_t at = 0;
  for (auto g : family) {
    parts.emplace_back(sol->particular.begin() + at, sol->particular.begin() + at + x.dim(g));
    at += x.dim(g);
  }
  return parts;
}

// ---------------------------------------------------------------------------

RegularityReport check_regular(const SystemMorphism& l) {
  const auto& x = l.source();
  const auto& y = l.target();
  const auto& p = x.index();
  RegularityReport r;
  for (std::size_t g = 0; g < x.size(); ++g) {
    ++r.cases_checked;
    const auto ker = null_space(l.at(g));
    if (!ker.empty() && !r.witness) {
      r.injective = false;
      r.witness = AxiomWitness{{g}, {ker.front()}};
    }
  }
  for (std::size_t g = 0; g < x.size(); ++g) {
    const auto img = image(l.at(g));
    for (std::size_t h = 0; h < x.size(); ++h) {
      if (!p.lt(g, h)) continue;
      ++r.cases_checked;
      if (r.witness) continue;
      // pairs (y, x') with link(g,h) y = l_h x'
      const auto pre = null_space(hstack({y.link(g, h), -l.at(h)}, y.dim(h)));
      for (const auto& v : pre) {
        Vector yy(v.begin(), v.begin() + y.dim(g));
        if (img.contains(yy)) continue;
        r.lifting = false;
        r.witness = AxiomWitness{{g, h}, {yy}};
        break;
      }
    }
  }
  return r;
}

bool regularity_witness_falsifies(const SystemMorphism& l, const RegularityReport& r) {
  if (!r.witness) return false;
  const auto& w = *r.witness;
  const auto& y = l.target();
  if (w.vectors.size() != 1) return false;
  const auto& v = w.vectors[0];
  if (!r.injective) {
    if (w.indices.size() != 1) return false;
    const auto g = w.indices[0];
    return v.size() == l.source().dim(g) && !is_zero(v) && is_zero(l.at(g).apply(v));
  }
  if (w.indices.size() != 2) return false;
  const auto g = w.indices[0], h = w.indices[1];
  if (!y.index().leq(g, h) || v.size() != y.dim(g)) return false;
  return solve(l.at(h), y.link(g, h).apply(v)).has_value() && !solve(l.at(g), v).has_value();
}

// ---------------------------------------------------------------------------

namespace {

bool contains_mask(const std::vector<std::uint64_t>& ms, std::uint64_t m) {
  return std::find(ms.begin(), ms.end(), m) != ms.end();
}

bool bounded(const std::vector<std::uint64_t>& ms, std::uint64_t a, std::uint64_t b) {
  return std::any_of(ms.begin(), ms.end(), [&](auto c) { return ((a | b) & ~c) == 0; });
}

std::size_t block_offset(std::uint64_t mask, std::size_t point, const std::vector<std::size_t>& mult) {
  std::size_t off = 0;
  for (std::size_t p = 0; p < point; ++p)
    if ((mask >> p) & 1U) off += mult[p];
  return off;
}

std::size_t fiber_dim(std::uint64_t mask, const std::vector<std::size_t>& mult) {
  return block_offset(mask, mult.size(), mult);
}

Matrix inclusion(std::uint64_t from, std::uint64_t to, const std::vector<std::size_t>& mult) {
  Matrix m(fiber_dim(to, mult), fiber_dim(from, mult));
  for (std::size_t p = 0; p < mult.size(); ++p) {
    if (!((from >> p) & 1U)) continue;
    const auto a = block_offset(from, p, mult), b = block_offset(to, p, mult);
    for (std::size_t k = 0; k < mult[p]; ++k) m(b + k, a + k) = 1;
  }
  return m;
}

}  // namespace

void require_free_model_family(const SetFamily& f) {
  const auto& ms = f.members;
  if (ms.empty()) throw NotIntersectionClosed("empty family");
  for (auto a : ms)
    if (a >> f.points) throw NotIntersectionClosed("member uses a point outside the label set");
  for (auto a : ms)
    for (auto b : ms) {
      if (!contains_mask(ms, a & b))
        throw NotIntersectionClosed(subset_name(a, f.points) + " cap " + subset_name(b, f.points) +
                                    " is not a member");
      if (bounded(ms, a, b) && !contains_mask(ms, a | b))
        throw NotUnionClosed(subset_name(a, f.points) + " cup " + subset_name(b, f.points) +
                             " is bounded but not a member");
    }
}

InductiveSystem generate_free_model(const SetFamily& f, std::vector<std::size_t> mult) {
  require_free_model_family(f);
  if (mult.empty()) mult.assign(f.points, 1);
  if (mult.size() != f.points) throw DimensionMismatch("one multiplicity per point");
  const auto p = subset_family_poset(f.members, f.points);
  std::vector<std::size_t> dims;
  for (auto m : f.members) dims.push_back(fiber_dim(m, mult));
  std::map<IndexPair, Matrix> links;
  for (std::size_t a = 0; a < f.members.size(); ++a)
    for (std::size_t b = 0; b < f.members.size(); ++b)
      if (p.lt(a, b)) links.emplace(IndexPair{a, b}, inclusion(f.members[a], f.members[b], mult));
  return InductiveSystem(p, std::move(dims), std::move(links));
}

InductiveSystem generate_counterexample(Axiom a) {
  const auto p = powerset_poset(2);
  auto link = [](std::size_t rows, std::size_t cols, int v) {
    Matrix m(rows, cols);
    if (rows == 1 && cols == 1) m(0, 0) = v;
    return m;
  };
  std::vector<std::size_t> dims;
  if (a == Axiom::kIII)
    dims = {0, 1, 1, 1};
  else if (a == Axiom::kII)
    dims = {0, 0, 0, 1};
  else
    throw PreconditionFailed("counterexamples are generated for axioms II and III");
  std::map<IndexPair, Matrix> links;
  for (std::size_t g = 0; g < 4; ++g)
    for (std::size_t h = 0; h < 4; ++h)
      if (p.lt(g, h)) links.emplace(IndexPair{g, h}, link(dims[h], dims[g], 1));
  return InductiveSystem(p, std::move(dims), std::move(links));
}

SetFamily close_family(SetFamily f) {
  auto& ms = f.members;
  for (bool grew = true; grew;) {
    grew = false;
    const auto snapshot = ms;
    for (auto a : snapshot)
      for (auto b : snapshot) {
        if (!contains_mask(ms, a & b)) {
          ms.push_back(a & b);
          grew = true;
        }
        if (bounded(ms, a, b) && !contains_mask(ms, a | b)) {
          ms.push_back(a | b);
          grew = true;
        }
      }
  }
  std::sort(ms.begin(), ms.end());
  return f;
}

namespace {

std::int64_t small_int(std::mt19937_64& rng, int radius) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * radius + 1)) - radius;
}

}  // namespace

SetFamily random_family(std::size_t points, std::mt19937_64& rng) {
  SetFamily f{points, {0}};
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << points); ++m)
    if (rng() & 1U) f.members.push_back(m);
  return close_family(f);
}

SystemMorphism random_regular_morphism(const SetFamily& f, std::size_t max_mult,
                                       std::mt19937_64& rng) {
  std::vector<std::size_t> m(f.points), d(f.points);
  std::vector<Matrix> emb(f.points);
  for (std::size_t p = 0; p < f.points; ++p) {
    m[p] = 1 + rng() % max_mult;
    d[p] = rng() % (m[p] + 1);
    do {
      emb[p] = Matrix(m[p], d[p]);
      for (std::size_t r = 0; r < m[p]; ++r)
        for (std::size_t c = 0; c < d[p]; ++c) emb[p](r, c) = static_cast<long>(small_int(rng, 3));
    } while (!emb[p].is_injective());
  }
  auto y = generate_free_model(f, m);
  auto x = generate_free_model(f, d);
  std::vector<Matrix> maps;
  for (auto mask : f.members) {
    Matrix l(fiber_dim(mask, m), fiber_dim(mask, d));
    for (std::size_t p = 0; p < f.points; ++p) {
      if (!((mask >> p) & 1U)) continue;
      const auto ro = block_offset(mask, p, m), co = block_offset(mask, p, d);
      for (std::size_t r = 0; r < m[p]; ++r)
        for (std::size_t c = 0; c < d[p]; ++c) l(ro + r, co + c) = emb[p](r, c);
    }
    maps.push_back(std::move(l));
  }
  return SystemMorphism(std::move(x), std::move(y), std::move(maps));
}

std::vector<SetFamily> enumerate_closed_families(std::size_t points) {
  if (points > 4) throw PreconditionFailed("enumeration is limited to 4 points");
  const std::size_t subsets = std::size_t{1} << points;
  std::vector<std::size_t> perm(points);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  auto permute_set = [&](std::uint64_t s, const std::vector<std::size_t>& pi) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < points; ++i)
      if ((s >> i) & 1U) out |= std::uint64_t{1} << pi[i];
    return out;
  };

  std::vector<SetFamily> out;
  const std::uint64_t families = std::uint64_t{1} << subsets;
  for (std::uint64_t fam = 1; fam < families; ++fam) {
    std::vector<std::uint64_t> ms;
    for (std::size_t s = 0; s < subsets; ++s)
      if ((fam >> s) & 1U) ms.push_back(s);
    bool closed = true;
    for (auto a : ms) {
      for (auto b : ms)
        if (!((fam >> (a & b)) & 1U) || (bounded(ms, a, b) && !((fam >> (a | b)) & 1U))) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (!closed) continue;
    bool canonical = true;
    for (const auto& pi : perms) {
      std::uint64_t image = 0;
      for (auto s : ms) image |= std::uint64_t{1} << permute_set(s, pi);
      if (image < fam) {
        canonical = false;
        break;
      }
    }
    if (canonical) out.push_back(SetFamily{points, ms});
  }
  return out;
}

}  // namespace carrier
