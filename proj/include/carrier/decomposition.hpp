#pragma once

// Constructive decomposition of relation vectors and the lifting construction
// for pushed-forward morphisms.

#include <carrier/localization.hpp>

namespace carrier {

/// sigma(vector, lower, upper).
struct SigmaTerm {
  Vector vector;
  std::size_t lower = 0;
  std::size_t upper = 0;
  friend bool operator==(const SigmaTerm&, const SigmaTerm&) = default;
};

struct StageSnapshot {
  std::size_t order = 0;
  /// The residual family y_{g g'} of this order, in (lower, upper) order.
  std::vector<SigmaTerm> family;
  /// Number of Y- and X-terms accumulated when this order was reached.
  std::size_t y_terms = 0;
  std::size_t x_terms = 0;
};

/// y = sum sigma^Y(y_terms) + L(sum sigma^X(x_terms)), with every Y-term over
/// a pair in I and every X-term over a pair in J.
struct DecompositionCertificate {
  SystemMorphism morphism;
  IndexSet i;
  IndexSet j;
  SumVector input;
  std::vector<SigmaTerm> y_terms;
  std::vector<SigmaTerm> x_terms;
  std::vector<StageSnapshot> stages;
  std::size_t final_order = 0;
  /// How often each branch of the splitting step ran.
  std::size_t direct_steps = 0;
  std::size_t glued_steps = 0;
};

struct EngineOptions {
  /// Only require (II) for X and (II)+(III) for Y instead of the full axioms.
  bool minimal_axioms = false;
};

/// Throws PreconditionFailed naming the first failing hypothesis.
void validate_lemma31_hypotheses(const SystemMorphism& l, IndexSet i, IndexSet j,
                                 const EngineOptions& opts = {});

/// Exact test of y in N^Y_J and y in M^Y_I + L(M^X).
bool in_lemma31_lhs(const SystemMorphism& l, IndexSet i, IndexSet j, const SumVector& y);

DecompositionCertificate lemma31_membership(const SystemMorphism& l, IndexSet i, IndexSet j,
                                            const SumVector& y, const EngineOptions& opts = {});

/// Sum of the certificate's terms as an element of the direct sum of Y.
SumVector evaluate(const DecompositionCertificate& c);

/// The block-diagonal matrix of L on the direct sums.
Matrix dense_map(const SystemMorphism& l);

/// The zero system over the index of y with the zero morphism into y.
SystemMorphism zero_morphism_into(const InductiveSystem& y);

struct LemmaA1Result {
  bool equal = false;
  Subspace lhs;   // N_Gamma cap M_I
  Subspace rhs;   // N_I
  /// One engine certificate per basis vector of lhs.
  std::vector<DecompositionCertificate> certificates;
};

LemmaA1Result lemmaa1_check(const InductiveSystem& y, IndexSet i, const EngineOptions& opts = {});

struct InjectivityVerdict {
  std::size_t delta = 0;
  bool injective = true;
  std::optional<Vector> kernel_vector;
};

struct Theorem6Setup {
  SystemMorphism l;
  Poset target;
  std::vector<std::size_t> lambda;
  Pushforward px;
  Pushforward py;
  SystemMorphism induced;  // lambda(l)
};

/// Validates the hypotheses and builds both pushforwards and lambda(l).
Theorem6Setup theorem6_setup(const SystemMorphism& l, const Poset& target,
                             const std::vector<std::size_t>& lambda,
                             const EngineOptions& opts = {});

std::vector<InjectivityVerdict> theorem6_injectivity(const Theorem6Setup& s);

struct LiftResult {
  Vector xi;
  DecompositionCertificate certificate;
};

/// Given eta at d in lambda(Y) and xi' at d' in lambda(X) with
/// rho_{d d'} eta = lambda(l)_{d'} xi', returns xi at d with
/// lambda(l)_d xi = eta and rho_{d d'} xi = xi'. Throws RelationNotSatisfied.
LiftResult theorem6_lift(const Theorem6Setup& s, std::size_t d, std::size_t d2, const Vector& eta,
                         const Vector& xi2);

}  // namespace carrier
