#pragma once

// Prelocalizability and regularity checks, and generators of model systems.

#include <carrier/inductive.hpp>

#include <random>

namespace carrier {

enum class Axiom { kI, kII, kIII };
std::string axiom_name(Axiom a);

/// Data falsifying an axiom.
///   (I):   indices (g, h),         vectors (x) with link(g,h) x = 0, x != 0
///   (II):  indices (g1, g2, j),    vectors (x) in X(j) outside the image
///   (III): indices (g1, g2, g, m), vectors (x1, x2) agreeing in X(g) but not
///          coming from X(m), m = g1 ^ g2
struct AxiomWitness {
  std::vector<std::size_t> indices;
  std::vector<Vector> vectors;
};

struct AxiomVerdict {
  bool holds = true;
  std::size_t cases_checked = 0;
  std::optional<AxiomWitness> witness;
};

struct PrelocReport {
  AxiomVerdict axiom_i;
  AxiomVerdict axiom_ii;
  AxiomVerdict axiom_iii;
  bool prelocalizable() const { return axiom_i.holds && axiom_ii.holds && axiom_iii.holds; }
  const AxiomVerdict& verdict(Axiom a) const;
};

/// Exhaustive check of (I)-(III). Throws NotQuasiLattice.
PrelocReport check_prelocalizable(const InductiveSystem& x);

/// Re-checks a failure witness from scratch; true iff it falsifies the axiom.
bool witness_falsifies(const InductiveSystem& x, Axiom a, const AxiomWitness& w);

/// Axiom (II) solve: x = link(g1, j) x1 + link(g2, j) x2 with j = g1 v g2.
/// Returns the canonical solution, or nullopt when none exists.
std::optional<std::pair<Vector, Vector>> split_along_join(const InductiveSystem& x,
                                                          const QuasiLattice& q, std::size_t g1,
                                                          std::size_t g2, const Vector& v);

/// Joint form of (II) for a family: v = sum_k link(g_k, top) x_k.
std::optional<std::vector<Vector>> split_along_family(const InductiveSystem& x,
                                                      const std::vector<std::size_t>& family,
                                                      std::size_t top, const Vector& v);

struct RegularityReport {
  bool injective = true;       // (a)
  bool lifting = true;         // (b)
  std::size_t cases_checked = 0;
  /// (a): (g), vector in the kernel of l_g.
  /// (b): (g, h), vector y in Y(g) with link y in image(l_h), y not in image(l_g).
  std::optional<AxiomWitness> witness;
  bool regular() const { return injective && lifting; }
};

RegularityReport check_regular(const SystemMorphism& l);

/// Checks the report's witness against the morphism from scratch.
bool regularity_witness_falsifies(const SystemMorphism& l, const RegularityReport& r);

/// Family of subsets of {0..points-1} as bitmasks, ordered by inclusion.
struct SetFamily {
  std::size_t points = 0;
  std::vector<std::uint64_t> members;
};

/// Throws NotIntersectionClosed / NotUnionClosed (a bounded pair whose union is
/// not a member) naming the offending pair.
void require_free_model_family(const SetFamily& f);

/// X(g) = direct sum over points p in g of Q^{mult[p]}, links are coordinate
/// inclusions. `mult` defaults to all ones.
InductiveSystem generate_free_model(const SetFamily& f, std::vector<std::size_t> mult = {});

/// A system on the Boolean lattice on two points that fails exactly `a`
/// (a must be kII or kIII).
InductiveSystem generate_counterexample(Axiom a);

/// Smallest family containing `seed` closed under intersection and under
/// unions of bounded pairs.
SetFamily close_family(SetFamily seed);

/// Random closed family with the empty set among its members.
SetFamily random_family(std::size_t points, std::mt19937_64& rng);

/// Random regular morphism between free models over `f`: Y has multiplicity
/// m_p in 1..max_mult, X has a subspace of dimension d_p <= m_p embedded by
/// a random injective integer matrix.
SystemMorphism random_regular_morphism(const SetFamily& f, std::size_t max_mult,
                                       std::mt19937_64& rng);

/// Every family on `points` points closed as above, one per orbit of the
/// point permutation group, in canonical order.
std::vector<SetFamily> enumerate_closed_families(std::size_t points);

}  // namespace carrier
