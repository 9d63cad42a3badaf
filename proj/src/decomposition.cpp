#include <carrier/decomposition.hpp>

namespace carrier {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionFailed(what);
}

SumVector sum_sigma(const InductiveSystem& x, const std::vector<SigmaTerm>& terms) {
  SumVector s;
  for (const auto& t : terms) s.add(sigma(x, t.vector, t.lower, t.upper));
  return s;
}

using Family = std::map<IndexPair, Vector>;

void accumulate(Family& f, std::size_t lower, std::size_t upper, const Vector& v) {
  if (is_zero(v)) return;
  auto it = f.find({lower, upper});
  if (it == f.end()) {
    f.emplace(IndexPair{lower, upper}, v);
    return;
  }
  it->second = add(it->second, v);
  if (is_zero(it->second)) f.erase(it);
}

std::vector<SigmaTerm> to_terms(const Family& f) {
  std::vector<SigmaTerm> out;
  for (const auto& [key, v] : f) out.push_back({v, key.first, key.second});
  return out;
}

Vector solve_or_throw(const Matrix& a, const Vector& b, const char* what) {
  auto sol = solve(a, b);
  if (!sol) throw PreconditionFailed(what);
  return sol->particular;
}

struct Engine {
  const SystemMorphism& l;
  const QuasiLattice& q;
  IndexSet i;
  IndexSet j;

  const InductiveSystem& x() const { return l.source(); }
  const InductiveSystem& y() const { return l.target(); }

  void check_invariant(const DecompositionCertificate& c, const Family& family) const {
    SumVector s = evaluate(c);
    s.add(sum_sigma(y(), to_terms(family)));
    if (!(s == c.input)) throw ResidualTooLarge("decomposition no longer reproduces its input");
  }

  DecompositionCertificate run(const SumVector& input) const {
    DecompositionCertificate c;
    c.morphism = l;
    c.i = i;
    c.j = j;
    c.input = input;
    if (j.empty()) {
      if (!input.is_zero()) throw NotInLHS("N_J is zero for empty J");
      c.stages.push_back({1, {}, 0, 0});
      c.final_order = 1;
      return c;
    }
    const auto st = order_statistics(q, j);
    const auto& p = y().index();
    const auto members = j.members();

    // Order 1: y as a combination of sigma(y_{g g'}, g, g') over pairs in J.
    std::vector<IndexPair> pairs;
    std::vector<Matrix> blocks;
    for (auto g : members)
      for (auto h : members)
        if (p.lt(g, h)) {
          pairs.push_back({g, h});
          Matrix b(y().total_dim(), y().dim(g));
          for (std::size_t e = 0; e < y().dim(g); ++e) {
            Vector v = zero_vector(y().dim(g));
            v[e] = 1;
            const auto col = sigma(y(), v, g, h).to_dense(y());
            for (std::size_t r = 0; r < col.size(); ++r) b(r, e) = col[r];
          }
          blocks.push_back(std::move(b));
        }
    const auto coeffs =
        solve_or_throw(hstack(blocks, y().total_dim()), input.to_dense(y()), "input is not in N_J");
    Family family;
    std::size_t at = 0;
    for (const auto& [g, h] : pairs) {
      Vector v(coeffs.begin() + at, coeffs.begin() + at + y().dim(g));
      at += y().dim(g);
      if (is_zero(v)) continue;
      if (i.contains(h))
        c.y_terms.push_back({v, g, h});
      else
        accumulate(family, g, h, v);
    }
    c.stages.push_back({1, to_terms(family), c.y_terms.size(), c.x_terms.size()});
    check_invariant(c, family);

    for (std::size_t n = 1; n <= j.size(); ++n) {
      const Family snapshot = family;
      Family next;
      for (const auto& [key, v] : snapshot)
        if (st.k[key.first] > n) accumulate(next, key.first, key.second, v);
      IndexSet cn = st.chains[n - 1];
      for (const auto& [key, ygg] : snapshot) {
        const auto [g, h] = key;
        if (st.k[g] != n) continue;
        IndexSet lambda;
        for (auto b : cn.members())
          if (b != g && p.lt(b, h)) lambda.add(b);
        if (lambda.empty()) {
          c.x_terms.push_back({solve_or_throw(l.at(g), ygg, "regularity lift failed"), g, h});
          ++c.direct_steps;
          continue;
        }
        step(c, snapshot, next, g, h, ygg, lambda);
      }
      family = std::move(next);
      c.stages.push_back({n + 1, to_terms(family), c.y_terms.size(), c.x_terms.size()});
      check_invariant(c, family);
    }
    if (!family.empty()) throw ResidualTooLarge("residual family did not vanish");
    c.final_order = j.size() + 1;
    return c;
  }

  void step(DecompositionCertificate& c, const Family& snapshot, Family& next, std::size_t g,
            std::size_t h, const Vector& ygg, IndexSet lambda) const {
    const auto bt = q.join_of(lambda);
    require(bt != kUndefined, "Lambda has no supremum");
    Vector z = zero_vector(y().dim(bt));
    for (auto b : lambda.members()) {
      auto it = snapshot.find({b, h});
      if (it != snapshot.end()) z = add(z, y().link(b, bt).apply(it->second));
    }
    const auto top = q.join(g, bt);
    require(top != kUndefined, "g and sup Lambda are not bounded above");
    const auto v = add(y().link(g, top).apply(ygg), y().link(bt, top).apply(z));
    const auto xt = solve_or_throw(l.at(top), v, "regularity lift failed");
    const auto split = split_along_join(x(), q, g, bt, xt);
    require(split.has_value(), "axiom (II) split failed for X");
    const auto& eta = split->first;
    const auto m = q.meet(bt, g);
    const auto w = solve_or_throw(y().link(m, g), subtract(ygg, l.at(g).apply(eta)),
                                  "axiom (III) glue failed for Y");
    std::vector<std::size_t> meets;
    IndexSet meet_set;
    for (auto b : lambda.members()) {
      meets.push_back(q.meet(b, g));
      meet_set.add(meets.back());
    }
    require(q.join_of(meet_set) == m, "distributivity: sup of meets differs from meet of sup");
    const auto parts = split_along_family(y(), meets, m, w);
    require(parts.has_value(), "axiom (II) split failed for Y");
    c.x_terms.push_back({eta, g, h});
    ++c.glued_steps;
    for (std::size_t k = 0; k < meets.size(); ++k) {
      const auto& wb = (*parts)[k];
      if (is_zero(wb)) continue;
      accumulate(next, meets[k], h, wb);
      if (i.contains(g))
        c.y_terms.push_back({scale(-1, wb), meets[k], g});
      else
        accumulate(next, meets[k], g, scale(-1, wb));
    }
  }
};

}  // namespace

Matrix dense_map(const SystemMorphism& l) {
  const auto& x = l.source();
  const auto& y = l.target();
  Matrix m(y.total_dim(), x.total_dim());
  for (std::size_t g = 0; g < x.size(); ++g)
    for (std::size_t r = 0; r < y.dim(g); ++r)
      for (std::size_t c = 0; c < x.dim(g); ++c) m(y.offset(g) + r, x.offset(g) + c) = l.at(g)(r, c);
  return m;
}

SystemMorphism zero_morphism_into(const InductiveSystem& y) {
  std::map<IndexPair, Matrix> links;
  for (const auto& [key, m] : y.links())
    if (key.first != key.second) links.emplace(key, Matrix(0, 0));
  InductiveSystem x(y.index(), std::vector<std::size_t>(y.size(), 0), std::move(links));
  std::vector<Matrix> maps;
  for (std::size_t g = 0; g < y.size(); ++g) maps.emplace_back(y.dim(g), 0);
  return SystemMorphism(std::move(x), y, std::move(maps));
}

void validate_lemma31_hypotheses(const SystemMorphism& l, IndexSet i, IndexSet j,
                                 const EngineOptions& opts) {
  const auto& p = l.target().index();
  require(i.subset_of(IndexSet::all(p.size())) && j.subset_of(IndexSet::all(p.size())),
          "I and J must be subsets of the index set");
  auto qv = validate_quasi_lattice(p);
  if (auto* d = std::get_if<LatticeDiagnostic>(&qv))
    throw PreconditionFailed("index is not a quasi-lattice: " + d->message);
  const auto& q = std::get<QuasiLattice>(qv);
  require(is_distributive(q).distributive, "index quasi-lattice is not distributive");
  const auto rx = check_prelocalizable(l.source());
  const auto ry = check_prelocalizable(l.target());
  if (opts.minimal_axioms) {
    require(rx.axiom_ii.holds, "X fails axiom (II)");
    require(ry.axiom_ii.holds, "Y fails axiom (II)");
    require(ry.axiom_iii.holds, "Y fails axiom (III)");
  } else {
    require(rx.prelocalizable(), "X is not prelocalizable");
    require(ry.prelocalizable(), "Y is not prelocalizable");
  }
  require(check_regular(l).regular(), "l is not regular");
  require(is_hereditary(p, i), "I is not hereditary");
  require(is_meet_closed(q, j), "J is not closed under meets");
}

bool in_lemma31_lhs(const SystemMorphism& l, IndexSet i, IndexSet j, const SumVector& y) {
  const auto& ys = l.target();
  const auto v = y.to_dense(ys);
  if (!relation_space(ys, j).contains(v)) return false;
  return sum(member_space(ys, i), image(dense_map(l))).contains(v);
}

DecompositionCertificate lemma31_membership(const SystemMorphism& l, IndexSet i, IndexSet j,
                                            const SumVector& y, const EngineOptions& opts) {
  validate_lemma31_hypotheses(l, i, j, opts);
  y.check(l.target());
  if (!in_lemma31_lhs(l, i, j, y)) throw NotInLHS("y is not in N_J cap (M_I + L(M))");
  const auto q = require_quasi_lattice(l.target().index());
  return Engine{l, q, i, j}.run(y);
}

SumVector evaluate(const DecompositionCertificate& c) {
  SumVector s = sum_sigma(c.morphism.target(), c.y_terms);
  s.add(c.morphism.apply(sum_sigma(c.morphism.source(), c.x_terms)));
  return s;
}

LemmaA1Result lemmaa1_check(const InductiveSystem& y, IndexSet i, const EngineOptions& opts) {
  const auto l = zero_morphism_into(y);
  const auto all = IndexSet::all(y.size());
  validate_lemma31_hypotheses(l, i, all, opts);
  LemmaA1Result r;
  r.lhs = intersect(relation_space(y, all), member_space(y, i));
  r.rhs = relation_space(y, i);
  r.equal = r.lhs == r.rhs;
  const auto q = require_quasi_lattice(y.index());
  for (const auto& v : r.lhs.basis())
    r.certificates.push_back(Engine{l, q, i, all}.run(SumVector::from_dense(y, v)));
  return r;
}

// ---------------------------------------------------------------------------

Theorem6Setup theorem6_setup(const SystemMorphism& l, const Poset& target,
                             const std::vector<std::size_t>& lambda, const EngineOptions& opts) {
  const auto all = IndexSet::all(l.source().size());
  validate_lemma31_hypotheses(l, IndexSet{}, all, opts);
  require_monotone(l.source().index(), target, lambda);
  auto px = pushforward(l.source(), target, lambda);
  auto py = pushforward(l.target(), target, lambda);
  auto induced = pushforward_morphism(l, px, py);
  return Theorem6Setup{l, target, lambda, std::move(px), std::move(py), std::move(induced)};
}

std::vector<InjectivityVerdict> theorem6_injectivity(const Theorem6Setup& s) {
  std::vector<InjectivityVerdict> out;
  for (std::size_t d = 0; d < s.target.size(); ++d) {
    InjectivityVerdict v;
    v.delta = d;
    const auto ker = null_space(s.induced.at(d));
    if (!ker.empty()) {
      v.injective = false;
      v.kernel_vector = ker.front();
    }
    out.push_back(std::move(v));
  }
  return out;
}

LiftResult theorem6_lift(const Theorem6Setup& s, std::size_t d, std::size_t d2, const Vector& eta,
                         const Vector& xi2) {
  if (d >= s.target.size() || d2 >= s.target.size() || !s.target.leq(d, d2))
    throw NotComparable("d is not below d'");
  const auto& fx = s.px.fibers;
  const auto& fy = s.py.fibers;
  if (eta.size() != fy[d].dim() || xi2.size() != fx[d2].dim())
    throw DimensionMismatch("class coordinates have the wrong length");
  if (s.py.system.link(d, d2).apply(eta) != s.induced.at(d2).apply(xi2))
    throw RelationNotSatisfied("rho eta differs from lambda(l) xi'");

  const auto& x = s.l.source();
  const auto& y = s.l.target();
  const auto yv = fy[d].lift(eta);
  const auto xv2 = fx[d2].lift(xi2);
  const auto diff = subtract(s.l.apply_dense(xv2), yv);
  const auto q = require_quasi_lattice(y.index());
  const Engine engine{s.l, q, fy[d].indices(), fy[d2].indices()};
  auto cert = engine.run(SumVector::from_dense(y, diff));
  const auto xt = sum_sigma(x, cert.x_terms).to_dense(x);
  const auto xv = subtract(xv2, xt);
  LiftResult r{fx[d].classify(xv), std::move(cert)};
  if (s.induced.at(d).apply(r.xi) != eta) throw ResidualTooLarge("lift fails lambda(l) xi = eta");
  if (s.px.system.link(d, d2).apply(r.xi) != xi2) throw ResidualTooLarge("lift fails rho xi = xi'");
  return r;
}

}  // namespace carrier
