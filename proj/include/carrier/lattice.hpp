#pragma once

// Finite posets and quasi-lattices with explicit order tables.

#include <carrier/errors.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace carrier {

inline constexpr std::size_t kMaxPosetSize = 64;

/// Subset of the elements of a poset with at most 64 elements.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

  static IndexSet all(std::size_t n) {
    return IndexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static IndexSet of(std::initializer_list<std::size_t> ids) {
    IndexSet s;
    for (auto i : ids) s.add(i);
    return s;
  }

  bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  void add(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  void remove(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }
  bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
  friend IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
  friend bool operator==(IndexSet, IndexSet) = default;
  friend auto operator<=>(IndexSet, IndexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

class Poset {
 public:
  Poset() = default;
  /// Validates reflexivity, antisymmetry and transitivity; throws NotAPoset
  /// naming the first witness found.
  Poset(std::vector<std::string> elements, std::vector<std::vector<bool>> leq);

  /// Builds the order from a predicate, then validates it.
  template <class Leq>
  static Poset from_relation(std::vector<std::string> elements, Leq&& leq) {
    const auto n = elements.size();
    std::vector<std::vector<bool>> table(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table[i][j] = leq(i, j);
    return Poset(std::move(elements), std::move(table));
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& name(std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> find(const std::string& name) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq_[a][b]; }
  bool comparable(std::size_t a, std::size_t b) const { return leq_[a][b] || leq_[b][a]; }
  const std::vector<std::vector<bool>>& table() const { return leq_; }

  IndexSet down_set(std::size_t a) const;
  IndexSet up_set(std::size_t a) const;
  IndexSet upper_bounds(std::size_t a, std::size_t b) const;
  IndexSet lower_bounds(std::size_t a, std::size_t b) const;

  /// Greatest element of `s`, if one exists.
  std::optional<std::size_t> greatest(IndexSet s) const;
  std::optional<std::size_t> least(IndexSet s) const;

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> leq_;
};

inline constexpr std::size_t kUndefined = static_cast<std::size_t>(-1);

/// Why a poset failed to be a quasi-lattice.
struct LatticeDiagnostic {
  enum class Reason { kNoInfimum, kNoSupremum } reason;
  std::size_t first;
  std::size_t second;
  std::string message;
};

class QuasiLattice;
std::variant<QuasiLattice, LatticeDiagnostic> validate_quasi_lattice(const Poset& p);

/// A poset with all binary meets and with joins of bounded-above pairs.
class QuasiLattice {
 public:
  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  /// kUndefined when {a, b} has no upper bound.
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  bool bounded_above(std::size_t a, std::size_t b) const { return join_[a][b] != kUndefined; }

  /// Join of a nonempty family, computed by iterated binary joins.
  std::size_t join_of(IndexSet family) const;
  std::size_t meet_of(IndexSet family) const;

 private:
  friend std::variant<QuasiLattice, LatticeDiagnostic> validate_quasi_lattice(const Poset&);
  Poset poset_;
  std::vector<std::vector<std::size_t>> meet_;
  std::vector<std::vector<std::size_t>> join_;
};

/// Convenience wrapper: throws NotQuasiLattice with the diagnostic message.
QuasiLattice require_quasi_lattice(const Poset& p);

struct DistributivityResult {
  bool distributive = true;
  /// (g1, g2, g3) with g1 ^ (g2 v g3) != (g1 ^ g2) v (g1 ^ g3).
  std::optional<std::array<std::size_t, 3>> witness;
};

DistributivityResult is_distributive(const QuasiLattice& q);

bool is_hereditary(const Poset& p, IndexSet s);
bool is_meet_closed(const QuasiLattice& q, IndexSet s);
/// Smallest meet-closed superset; equals the set of infima of nonempty subsets.
IndexSet meet_closure(const QuasiLattice& q, IndexSet generators);

struct OrderStatistics {
  /// k[g] = |{g' in J : g' >= g}| for g in J, 0 outside J.
  std::vector<std::size_t> k;
  /// chains[n-1] = C_n = {g in J : k(g) >= n}, for n = 1 .. |J|.
  std::vector<IndexSet> chains;
  std::size_t infimum;  // the unique element of C_|J|
};

OrderStatistics order_statistics(const QuasiLattice& q, IndexSet j);

// Common constructions used across tests and generators.
Poset powerset_poset(std::size_t points);
Poset chain_poset(std::size_t n);
/// Family of subsets (bitmasks over `points` labels) ordered by inclusion.
Poset subset_family_poset(const std::vector<std::uint64_t>& family, std::size_t points);
std::string subset_name(std::uint64_t mask, std::size_t points);

}  // namespace carrier
