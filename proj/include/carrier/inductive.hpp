#pragma once

// Inductive systems of finite-dimensional rational spaces over a finite poset,
// their direct sums, relation subspaces and colimit presentations.

#include <carrier/lattice.hpp>
#include <carrier/linalg.hpp>

#include <map>
#include <optional>
#include <utility>

namespace carrier {

using IndexPair = std::pair<std::size_t, std::size_t>;

class InductiveSystem {
 public:
  InductiveSystem() = default;
  /// `links` may list any subset of the strict pairs as long as every pair
  /// g < g' is reachable by composing listed links; missing pairs are filled
  /// by composition and the whole table is then checked for functoriality.
  /// Throws InvalidSystem or DimensionMismatch.
  InductiveSystem(Poset index, std::vector<std::size_t> dims, std::map<IndexPair, Matrix> links);

  const Poset& index() const { return index_; }
  std::size_t size() const { return index_.size(); }
  std::size_t dim(std::size_t g) const { return dims_[g]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const Matrix& link(std::size_t g, std::size_t h) const;
  const std::map<IndexPair, Matrix>& links() const { return links_; }

  /// Layout of the direct sum over the whole index set.
  std::size_t total_dim() const { return total_; }
  std::size_t offset(std::size_t g) const { return offsets_[g]; }

 private:
  Poset index_;
  std::vector<std::size_t> dims_;
  std::map<IndexPair, Matrix> links_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// Element of the direct sum, stored sparsely with components ordered by index.
class SumVector {
 public:
  SumVector() = default;

  static SumVector from_dense(const InductiveSystem& x, const Vector& dense);
  static SumVector component(std::size_t g, Vector v);

  const std::map<std::size_t, Vector>& components() const { return parts_; }
  /// Adds v into the component at g; zero components are dropped.
  void add(std::size_t g, const Vector& v);
  void add(const SumVector& other, const Rational& factor = 1);
  bool is_zero() const { return parts_.empty(); }
  IndexSet support() const;

  Vector to_dense(const InductiveSystem& x) const;
  /// Checks every component has the fiber dimension of x.
  void check(const InductiveSystem& x) const;

  friend bool operator==(const SumVector&, const SumVector&) = default;

 private:
  std::map<std::size_t, Vector> parts_;
};

class SystemMorphism {
 public:
  SystemMorphism() = default;
  /// Throws InvalidSystem naming the first non-commuting square.
  SystemMorphism(InductiveSystem source, InductiveSystem target, std::vector<Matrix> maps);

  const InductiveSystem& source() const { return source_; }
  const InductiveSystem& target() const { return target_; }
  const Matrix& at(std::size_t g) const { return maps_[g]; }
  const std::vector<Matrix>& maps() const { return maps_; }

  /// The block-diagonal map L on the direct sums.
  Vector apply_dense(const Vector& x) const;
  SumVector apply(const SumVector& x) const;

 private:
  InductiveSystem source_;
  InductiveSystem target_;
  std::vector<Matrix> maps_;
};

/// sigma(x, g, h) = i_g x - i_h link(g, h) x. Throws NotComparable unless g <= h.
SumVector sigma(const InductiveSystem& x, const Vector& v, std::size_t g, std::size_t h);

/// N_I: span of sigma(e, g, h) over basis vectors e and pairs g <= h in I.
Subspace relation_space(const InductiveSystem& x, IndexSet i);
/// M_I: the coordinate block of the direct sum supported on I.
Subspace member_space(const InductiveSystem& x, IndexSet i);

/// Quotient presentation M_I / N_I. Classes are identified with coordinates
/// on the "free" columns: coordinates of M_I that are not pivots of N_I.
class Colimit {
 public:
  Colimit() = default;
  Colimit(const InductiveSystem& x, IndexSet i);

  IndexSet indices() const { return indices_; }
  std::size_t dim() const { return free_.size(); }
  const Subspace& kernel() const { return kernel_; }
  const std::vector<std::size_t>& free_coordinates() const { return free_; }

  /// j_I: dense vector of M_I to class coordinates. Throws DimensionMismatch
  /// if the vector has support outside I.
  Vector classify(const Vector& dense) const;
  /// Canonical representative of a class, as a dense vector of M_I.
  Vector lift(const Vector& coords) const;
  /// rho_g = j_I i_g as a matrix dim(g) -> dim().
  Matrix rho(std::size_t g) const;

 private:
  std::size_t ambient_ = 0;
  IndexSet indices_;
  std::vector<bool> in_support_;
  Subspace kernel_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> dims_;
};

/// tau_{I,J}; throws NotNested unless I is a subset of J. Verified against
/// tau j_I x = j_J x on every basis vector of M_I.
Matrix connecting_map(const InductiveSystem& x, const Colimit& from, const Colimit& to);

/// Checks that `lambda` (indexed by the elements of x's index) is monotone into
/// `target`; throws NotMonotone naming the first failing pair.
void require_monotone(const Poset& source, const Poset& target, const std::vector<std::size_t>& lambda);

/// Gamma_d = {g : lambda(g) <= d}.
IndexSet preimage_down(const Poset& source, const Poset& target,
                       const std::vector<std::size_t>& lambda, std::size_t d);

struct Pushforward {
  InductiveSystem system;           // lambda(X) over the target poset
  std::vector<Colimit> fibers;      // presentation of lambda(X)(d) over Gamma_d
  std::vector<std::size_t> lambda;
};

Pushforward pushforward(const InductiveSystem& x, const Poset& target,
                        const std::vector<std::size_t>& lambda);

/// lambda(l), built on the presentations of both pushforwards and verified
/// against lambda(l)_d j^X x = j^Y L x on a basis.
SystemMorphism pushforward_morphism(const SystemMorphism& l, const Pushforward& px,
                                    const Pushforward& py);

}  // namespace carrier
