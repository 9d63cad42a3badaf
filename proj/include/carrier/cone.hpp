#pragma once

// Closed cones in R^k given as finite unions of polyhedral cones, with the
// uniform norm |x| = max_i |x_i| throughout.

#include <carrier/rational.hpp>

#include <optional>
#include <random>
#include <vector>

namespace carrier {

using RealVector = std::vector<double>;

double sup_norm(const RealVector& x);
Rational sup_norm(const Vector& x);
Rational l1_norm(const Vector& x);
RealVector to_real(const Vector& x);
double dot(const Vector& l, const RealVector& x);
/// g / |g|; g must be nonzero.
Vector normalized(const Vector& g);

class Cone {
 public:
  using Piece = std::vector<Vector>;

  /// Zero generators are dropped. Throws EmptyCone when `pieces` is empty and
  /// DimensionMismatch on a generator of the wrong length.
  Cone(std::size_t dim, std::vector<Piece> pieces);

  static Cone zero(std::size_t dim);
  static Cone polyhedral(std::size_t dim, Piece generators);
  static Cone whole(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  /// All generators of all pieces, each scaled to unit norm.
  std::vector<Vector> unit_generators() const;
  bool is_zero() const;

  /// Uniform-norm distance; the double version solves a floating LP per piece
  /// and returns |x - G c| for the computed c (an upper bound, accurate to
  /// rounding).
  double distance(const RealVector& x) const;
  Rational distance_exact(const Vector& x) const;
  bool contains(const Vector& x) const { return distance_exact(x) == 0; }

  /// A random point of the cone with |x| = 1 (the zero vector for {0}).
  RealVector sample_unit(std::mt19937_64& rng) const;

 private:
  std::size_t dim_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<RealVector>> real_;
};

struct ProperReport {
  bool proper = false;
  /// When proper: l with l(g) >= 1 on every unit generator, of least l1 norm.
  Vector functional;
  /// When not proper: unit generators and convex weights summing them to 0.
  std::vector<Vector> generators;
  std::vector<Rational> weights;
};

ProperReport is_proper(const Cone& k);

/// A nonzero point of K1 cap K2, or nullopt when the intersection is {0}.
std::optional<Vector> intersection_witness(const Cone& k1, const Cone& k2);

struct ThetaBound {
  double theta = 1;
  double spacing = 0;
  std::size_t grid_points = 0;
};

/// theta > 0 with delta_{K1}(x) >= theta |x| on K2. The grid on the unit
/// sphere starts at `spacing` and is halved down to `min_spacing`. Throws
/// ConesIntersect or GridTooCoarse.
ThetaBound theta_lower_bound(const Cone& k1, const Cone& k2, double spacing = 0.125,
                             double min_spacing = 1.0 / 512, std::size_t max_points = 400000);

/// Replaces every unit generator g by the 2^k generators g + eps*s, s in
/// {-1,1}^k. The result contains the ball of radius eps|x| around each x in U.
Cone conic_neighborhood(const Cone& u, const Rational& eps);

/// delta_K(x) <= d.
bool in_d_neighborhood(const Cone& k, const Rational& d, const Vector& x);
bool in_d_neighborhood(const Cone& k, double d, const RealVector& x);

/// l with l >= kappa (or >= 1 when kappa == 0) on the unit sphere of V1 and
/// l > 0 on the closure of `containing` minus 0. Throws NotProper.
Vector separating_functional_with_margin(const Cone& v1, const Rational& kappa,
                                         const std::optional<Cone>& containing = std::nullopt);

}  // namespace carrier
