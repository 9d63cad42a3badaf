#include <carrier/inductive.hpp>

#include <algorithm>

namespace carrier {

namespace {

std::string pair_name(const Poset& p, std::size_t g, std::size_t h) {
  return p.name(g) + "<=" + p.name(h);
}

}  // namespace

InductiveSystem::InductiveSystem(Poset index, std::vector<std::size_t> dims,
                                 std::map<IndexPair, Matrix> links)
    : index_(std::move(index)), dims_(std::move(dims)), links_(std::move(links)) {
  const auto n = index_.size();
  if (dims_.size() != n) throw DimensionMismatch("one dimension per index element required");
  for (const auto& [key, m] : links_) {
    const auto [g, h] = key;
    if (g >= n || h >= n) throw InvalidSystem("link index out of range");
    if (!index_.leq(g, h)) throw InvalidSystem("link on incomparable pair " + pair_name(index_, g, h));
    if (m.rows() != dims_[h] || m.cols() != dims_[g])
      throw DimensionMismatch("link " + pair_name(index_, g, h) + " has the wrong shape");
  }
  for (std::size_t g = 0; g < n; ++g) {
    auto [it, fresh] = links_.emplace(IndexPair{g, g}, Matrix::identity(dims_[g]));
    if (!fresh && it->second != Matrix::identity(dims_[g]))
      throw InvalidSystem("link " + pair_name(index_, g, g) + " is not the identity");
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h) {
        if (!index_.lt(g, h) || links_.count({g, h})) continue;
        for (std::size_t m = 0; m < n; ++m) {
          if (!index_.lt(g, m) || !index_.lt(m, h)) continue;
          auto a = links_.find({g, m});
          auto b = links_.find({m, h});
          if (a == links_.end() || b == links_.end()) continue;
          links_.emplace(IndexPair{g, h}, b->second * a->second);
          grew = true;
          break;
        }
      }
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (index_.leq(g, h) && !links_.count({g, h}))
        throw InvalidSystem("no link for " + pair_name(index_, g, h));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t m = 0; m < n; ++m) {
      if (!index_.lt(g, m)) continue;
      for (std::size_t h = 0; h < n; ++h)
        if (index_.lt(m, h) && link(m, h) * link(g, m) != link(g, h))
          throw InvalidSystem("functoriality fails on " + index_.name(g) + "<=" + index_.name(m) +
                              "<=" + index_.name(h));
    }
  offsets_.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    offsets_[g] = total_;
    total_ += dims_[g];
  }
}

const Matrix& InductiveSystem::link(std::size_t g, std::size_t h) const {
  auto it = links_.find({g, h});
  if (it == links_.end()) throw NotComparable(index_.name(g) + " is not below " + index_.name(h));
  return it->second;
}

// ---------------------------------------------------------------------------

SumVector SumVector::from_dense(const InductiveSystem& x, const Vector& dense) {
  if (dense.size() != x.total_dim()) throw DimensionMismatch("dense vector length");
  SumVector s;
  for (std::size_t g = 0; g < x.size(); ++g) {
    Vector part(dense.begin() + x.offset(g), dense.begin() + x.offset(g) + x.dim(g));
    s.add(g, part);
  }
  return s;
}

SumVector SumVector::component(std::size_t g, Vector v) {
  SumVector s;
  s.add(g, v);
  return s;
}

void SumVector::add(std::size_t g, const Vector& v) {
  if (carrier::is_zero(v)) return;
  auto it = parts_.find(g);
  if (it == parts_.end()) {
    parts_.emplace(g, v);
    return;
  }
  it->second = carrier::add(it->second, v);
  if (carrier::is_zero(it->second)) parts_.erase(it);
}

void SumVector::add(const SumVector& other, const Rational& factor) {
  for (const auto& [g, v] : other.parts_) add(g, scale(factor, v));
}

IndexSet SumVector::support() const {
  IndexSet s;
  for (const auto& [g, v] : parts_) s.add(g);
  return s;
}

void SumVector::check(const InductiveSystem& x) const {
  for (const auto& [g, v] : parts_)
    if (g >= x.size() || v.size() != x.dim(g))
      throw DimensionMismatch("sum vector component has the wrong dimension");
}

Vector SumVector::to_dense(const InductiveSystem& x) const {
  check(x);
  Vector out = zero_vector(x.total_dim());
  for (const auto& [g, v] : parts_)
    std::copy(v.begin(), v.end(), out.begin() + x.offset(g));
  return out;
}

// ---------------------------------------------------------------------------

SystemMorphism::SystemMorphism(InductiveSystem source, InductiveSystem target,
                               std::vector<Matrix> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
  if (!(source_.index() == target_.index()))
    throw InvalidSystem("morphism between systems over different index sets");
  const auto n = source_.size();
  if (maps_.size() != n) throw DimensionMismatch("one map per index element required");
  for (std::size_t g = 0; g < n; ++g)
    if (maps_[g].rows() != target_.dim(g) || maps_[g].cols() != source_.dim(g))
      throw DimensionMismatch("morphism component at " + source_.index().name(g));
  for (const auto& [key, link] : source_.links()) {
    const auto [g, h] = key;
    if (g != h && maps_[h] * link != target_.link(g, h) * maps_[g])
      throw InvalidSystem("square does not commute on " + pair_name(source_.index(), g, h));
  }
}

Vector SystemMorphism::apply_dense(const Vector& x) const {
  return apply(SumVector::from_dense(source_, x)).to_dense(target_);
}

SumVector SystemMorphism::apply(const SumVector& x) const {
  x.check(source_);
  SumVector out;
  for (const auto& [g, v] : x.components()) out.add(g, maps_[g].apply(v));
  return out;
}

// ---------------------------------------------------------------------------

SumVector sigma(const InductiveSystem& x, const Vector& v, std::size_t g, std::size_t h) {
  if (!x.index().leq(g, h))
    throw NotComparable(x.index().name(g) + " is not below " + x.index().name(h));
  if (v.size() != x.dim(g)) throw DimensionMismatch("sigma argument");
  SumVector s;
  s.add(g, v);
  s.add(h, scale(-1, x.link(g, h).apply(v)));
  return s;
}

Subspace relation_space(const InductiveSystem& x, IndexSet i) {
  Subspace n(x.total_dim());
  for (auto g : i.members())
    for (auto h : i.members()) {
      if (!x.index().lt(g, h)) continue;
      for (std::size_t e = 0; e < x.dim(g); ++e) {
        Vector v = zero_vector(x.dim(g));
        v[e] = 1;
        n.insert(sigma(x, v, g, h).to_dense(x));
      }
    }
  return n;
}

Subspace member_space(const InductiveSystem& x, IndexSet i) {
  Subspace m(x.total_dim());
  for (auto g : i.members())
    for (std::size_t e = 0; e < x.dim(g); ++e) {
      Vector v = zero_vector(x.total_dim());
      v[x.offset(g) + e] = 1;
      m.insert(std::move(v));
    }
  return m;
}

// ---------------------------------------------------------------------------

Colimit::Colimit(const InductiveSystem& x, IndexSet i)
    : ambient_(x.total_dim()),
      indices_(i),
      in_support_(x.total_dim(), false),
      kernel_(relation_space(x, i)),
      offsets_(x.size()),
      dims_(x.dims()) {
  for (std::size_t g = 0; g < x.size(); ++g) offsets_[g] = x.offset(g);
  for (auto g : i.members())
    for (std::size_t e = 0; e < x.dim(g); ++e) in_support_[x.offset(g) + e] = true;
  std::vector<bool> pivot(ambient_, false);
  for (auto p : kernel_.pivots()) pivot[p] = true;
  for (std::size_t c = 0; c < ambient_; ++c)
    if (in_support_[c] && !pivot[c]) free_.push_back(c);
}

Vector Colimit::classify(const Vector& dense) const {
  if (dense.size() != ambient_) throw DimensionMismatch("classify: ambient length");
  for (std::size_t c = 0; c < ambient_; ++c)
    if (!in_support_[c] && sgn(dense[c]) != 0)
      throw DimensionMismatch("classify: vector has support outside the index set");
  const auto r = kernel_.reduce(dense);
  Vector out(free_.size());
  for (std::size_t k = 0; k < free_.size(); ++k) out[k] = r[free_[k]];
  return out;
}

Vector Colimit::lift(const Vector& coords) const {
  if (coords.size() != free_.size()) throw DimensionMismatch("lift: coordinate length");
  Vector out = zero_vector(ambient_);
  for (std::size_t k = 0; k < free_.size(); ++k) out[free_[k]] = coords[k];
  return out;
}

Matrix Colimit::rho(std::size_t g) const {
  if (!indices_.contains(g)) throw DimensionMismatch("rho: index outside the colimit");
  Matrix m(dim(), dims_[g]);
  for (std::size_t e = 0; e < dims_[g]; ++e) {
    Vector v = zero_vector(ambient_);
    v[offsets_[g] + e] = 1;
    const auto c = classify(v);
    for (std::size_t r = 0; r < c.size(); ++r) m(r, e) = c[r];
  }
  return m;
}

Matrix connecting_map(const InductiveSystem& x, const Colimit& from, const Colimit& to) {
  if (!from.indices().subset_of(to.indices())) throw NotNested("I is not a subset of J");
  Matrix tau(to.dim(), from.dim());
  for (std::size_t k = 0; k < from.dim(); ++k) {
    Vector e = zero_vector(from.dim());
    e[k] = 1;
    const auto c = to.classify(from.lift(e));
    for (std::size_t r = 0; r < c.size(); ++r) tau(r, k) = c[r];
  }
  for (auto g : from.indices().members())
    for (std::size_t e = 0; e < x.dim(g); ++e) {
      Vector v = zero_vector(x.total_dim());
      v[x.offset(g) + e] = 1;
      if (tau.apply(from.classify(v)) != to.classify(v))
        throw ResidualTooLarge("connecting map fails its defining identity");
    }
  return tau;
}

void require_monotone(const Poset& source, const Poset& target,
                      const std::vector<std::size_t>& lambda) {
  if (lambda.size() != source.size()) throw DimensionMismatch("lambda must map every element");
  for (auto v : lambda)
    if (v >= target.size()) throw DimensionMismatch("lambda value out of range");
  for (std::size_t g = 0; g < source.size(); ++g)
    for (std::size_t h = 0; h < source.size(); ++h)
      if (source.leq(g, h) && !target.leq(lambda[g], lambda[h]))
        throw NotMonotone("lambda not monotone on " + source.name(g) + "<=" + source.name(h));
}

IndexSet preimage_down(const Poset& source, const Poset& target,
                       const std::vector<std::size_t>& lambda, std::size_t d) {
  IndexSet s;
  for (std::size_t g = 0; g < source.size(); ++g)
    if (target.leq(lambda[g], d)) s.add(g);
  return s;
}

Pushforward pushforward(const InductiveSystem& x, const Poset& target,
                        const std::vector<std::size_t>& lambda) {
  require_monotone(x.index(), target, lambda);
  Pushforward out;
  out.lambda = lambda;
  std::vector<std::size_t> dims;
  for (std::size_t d = 0; d < target.size(); ++d) {
    out.fibers.emplace_back(x, preimage_down(x.index(), target, lambda, d));
    dims.push_back(out.fibers.back().dim());
  }
  std::map<IndexPair, Matrix> links;
  for (std::size_t d = 0; d < target.size(); ++d)
    for (std::size_t e = 0; e < target.size(); ++e)
      if (target.lt(d, e)) links.emplace(IndexPair{d, e}, connecting_map(x, out.fibers[d], out.fibers[e]));
  out.system = InductiveSystem(target, std::move(dims), std::move(links));
  return out;
}

SystemMorphism pushforward_morphism(const SystemMorphism& l, const Pushforward& px,
                                    const Pushforward& py) {
  const auto& x = l.source();
  if (px.lambda != py.lambda) throw PreconditionFailed("pushforwards along different maps");
  std::vector<Matrix> maps;
  for (std::size_t d = 0; d < px.fibers.size(); ++d) {
    const auto& fx = px.fibers[d];
    const auto& fy = py.fibers[d];
    Matrix m(fy.dim(), fx.dim());
    for (std::size_t k = 0; k < fx.dim(); ++k) {
      Vector e = zero_vector(fx.dim());
      e[k] = 1;
      const auto c = fy.classify(l.apply_dense(fx.lift(e)));
      for (std::size_t r = 0; r < c.size(); ++r) m(r, k) = c[r];
    }
    for (auto g : fx.indices().members())
      for (std::size_t e = 0; e < x.dim(g); ++e) {
        Vector v = zero_vector(x.total_dim());
        v[x.offset(g) + e] = 1;
        if (m.apply(fx.classify(v)) != fy.classify(l.apply_dense(v)))
          throw ResidualTooLarge("induced map fails its defining identity");
      }
    maps.push_back(std::move(m));
  }
  return SystemMorphism(px.system, py.system, std::move(maps));
}

}  // namespace carrier
