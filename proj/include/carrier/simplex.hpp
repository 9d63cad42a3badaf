#pragma once

// Dense two-phase simplex for small linear programs in standard form
//   minimize c.x  subject to  A x = b, x >= 0.
// Instantiated with Rational (exact) and double (tolerance kLpEps).
// Bland's rule throughout, so no cycling.

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

namespace carrier {

inline constexpr double kLpEps = 1e-11;

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  T value{};
  std::vector<T> x;
};

namespace lp_detail {

template <class T>
bool positive(const T& v) {
  if constexpr (std::is_floating_point_v<T>) return v > kLpEps;
  else return v > 0;
}

template <class T>
bool negative(const T& v) {
  if constexpr (std::is_floating_point_v<T>) return v < -kLpEps;
  else return v < 0;
}

template <class T>
class Tableau {
 public:
  Tableau(const std::vector<std::vector<T>>& a, const std::vector<T>& b, std::size_t n)
      : m_(a.size()), n_(n), cols_(n + a.size()), t_(a.size() + 1, std::vector<T>(cols_ + 1)),
        basis_(a.size()) {
    for (std::size_t r = 0; r < m_; ++r) {
      const bool flip = negative(b[r]);
      for (std::size_t c = 0; c < n_; ++c) t_[r][c] = flip ? T(-a[r][c]) : a[r][c];
      t_[r][n_ + r] = T(1);
      t_[r][cols_] = flip ? T(-b[r]) : b[r];
      basis_[r] = n_ + r;
    }
  }

  LpSolution<T> solve(const std::vector<T>& c) {
    // phase 1: minimize the sum of artificials
    auto& obj = t_[m_];
    for (auto& v : obj) v = T(0);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t k = 0; k <= cols_; ++k)
        if (k < n_ || k == cols_) obj[k] -= t_[r][k];
    iterate(cols_);
    LpSolution<T> out;
    if (positive(T(-obj[cols_]))) return out;
    drive_out_artificials();

    for (auto& v : obj) v = T(0);
    for (std::size_t k = 0; k < n_; ++k) obj[k] = c[k];
    for (std::size_t r = 0; r < m_; ++r) {
      const T f = obj[basis_[r]];
      if (f == T(0)) continue;
      for (std::size_t k = 0; k <= cols_; ++k) obj[k] -= f * t_[r][k];
    }
    if (!iterate(n_)) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.x.assign(n_, T(0));
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) out.x[basis_[r]] = t_[r][cols_];
    out.value = T(-obj[cols_]);
    return out;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const T p = t_[row][col];
    for (auto& v : t_[row]) v /= p;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const T f = t_[r][col];
      if (f == T(0)) continue;
      for (std::size_t k = 0; k <= cols_; ++k) t_[r][k] -= f * t_[row][k];
      if constexpr (std::is_floating_point_v<T>) t_[r][col] = 0;
    }
    basis_[row] = col;
  }

  // Columns >= limit never enter. Returns false on unboundedness.
  bool iterate(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t k = 0; k < limit; ++k)
        if (negative(t_[m_][k])) {
          enter = k;
          break;
        }
      if (enter == limit) return true;
      std::size_t leave = m_;
      T best{};
      for (std::size_t r = 0; r < m_; ++r) {
        if (!positive(t_[r][enter])) continue;
        T ratio = t_[r][cols_] / t_[r][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        bool nz;
        if constexpr (std::is_floating_point_v<T>) nz = std::fabs(t_[r][k]) > kLpEps;
        else nz = t_[r][k] != 0;
        if (nz) {
          pivot(r, k);
          break;
        }
      }
      // a row left with an artificial is redundant; its artificial stays at zero
    }
  }

  std::size_t m_, n_, cols_;
  std::vector<std::vector<T>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace lp_detail

template <class T>
LpSolution<T> solve_lp(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                       const std::vector<T>& c) {
  lp_detail::Tableau<T> t(a, b, c.size());
  return t.solve(c);
}

}  // namespace carrier
