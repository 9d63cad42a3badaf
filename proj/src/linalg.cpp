#include <carrier/linalg.hpp>

#include <algorithm>
#include <stdexcept>

namespace carrier {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionMismatch(what);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, "row length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    require(cols[c].size() == rows, "column length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector Matrix::apply(const Vector& v) const {
  require(v.size() == cols_, "matrix-vector product");
  Vector out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(v[c]) != 0) acc += a * v[c];
    }
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::size_t Matrix::rank() const {
  Subspace s(cols_);
  for (std::size_t r = 0; r < rows_; ++r) s.insert(row(r));
  return s.dim();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, "matrix product");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) m(i, j) += aik * b(k, j);
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

Matrix operator-(const Matrix& a) {
  Matrix m = a;
  for (auto& x : m.data_) x = -x;
  return m;
}

// ---------------------------------------------------------------------------

Subspace Subspace::span(std::size_t ambient, std::span<const Vector> vectors) {
  Subspace s(ambient);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    Vector e = zero_vector(ambient);
    e[i] = 1;
    s.basis_.push_back(std::move(e));
    s.pivots_.push_back(i);
  }
  return s;
}

void Subspace::check(const Vector& v) const {
  require(v.size() == ambient_, "vector does not live in the ambient space");
}

Vector Subspace::reduce(Vector v) const {
  check(v);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto p = pivots_[i];
    if (sgn(v[p]) == 0) continue;
    const Rational f = v[p];
    const auto& b = basis_[i];
    for (std::size_t c = p; c < ambient_; ++c)
      if (sgn(b[c]) != 0) v[c] -= f * b[c];
  }
  return v;
}

bool Subspace::insert(Vector v) {
  v = reduce(std::move(v));
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
  if (it == v.end()) return false;
  const auto p = static_cast<std::size_t>(it - v.begin());
  const Rational lead = v[p];
  for (std::size_t c = p; c < ambient_; ++c) v[c] /= lead;
  // keep the basis fully reduced: clear column p from existing rows
  for (auto& b : basis_) {
    if (sgn(b[p]) == 0) continue;
    const Rational f = b[p];
    for (std::size_t c = p; c < ambient_; ++c)
      if (sgn(v[c]) != 0) b[c] -= f * v[c];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  basis_.insert(basis_.begin() + idx, std::move(v));
  return true;
}

bool Subspace::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  require(other.ambient_ == ambient_, "subspace inclusion");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const Vector& v) { return contains(v); });
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require(a.ambient() == b.ambient(), "subspace sum");
  Subspace s = a;
  for (const auto& v : b.basis()) s.insert(v);
  return s;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require(a.ambient() == b.ambient(), "subspace intersection");
  // Coefficient vectors (c, d) with c*A = d*B; the intersection is c*A.
  const auto n = a.ambient();
  const auto da = a.dim();
  const auto db = b.dim();
  Matrix m(n, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t r = 0; r < n; ++r) m(r, i) = a.basis()[i][r];
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t r = 0; r < n; ++r) m(r, da + j) = -b.basis()[j][r];
  Subspace out(n);
  for (const auto& coeff : null_space(m)) {
    Vector v = zero_vector(n);
    for (std::size_t i = 0; i < da; ++i)
      if (sgn(coeff[i]) != 0) axpy(coeff[i], a.basis()[i], v);
    out.insert(std::move(v));
  }
  return out;
}

std::size_t quotient_dim(std::size_t ambient, const Subspace& s) {
  require(s.ambient() == ambient, "quotient");
  return ambient - s.dim();
}

Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    require(b.rows() == rows, "hstack row count");
    cols += b.cols();
  }
  Matrix m(rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) m(r, c0 + c) = b(r, c);
    c0 += b.cols();
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    require(b.cols() == cols, "vstack column count");
    rows += b.rows();
  }
  Matrix m(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return m;
}

Subspace image(const Matrix& a) {
  Subspace s(a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) s.insert(a.column(c));
  return s;
}

namespace {

// In-place RREF of an augmented system; returns pivot columns (< limit).
std::vector<std::size_t> rref(std::vector<Vector>& rows, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < limit && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && sgn(rows[sel][c]) == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rational lead = rows[r][c];
    for (std::size_t j = c; j < width; ++j) rows[r][j] /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < width; ++j)
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<Vector> null_space(const Matrix& a) {
  std::vector<Vector> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
  const auto pivots = rref(rows, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Solution> solve(const Matrix& a, const Vector& b) {
  require(b.size() == a.rows(), "right-hand side length");
  std::vector<Vector> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Vector row = a.row(r);
    row.push_back(b[r]);
    rows.push_back(std::move(row));
  }
  const auto pivots = rref(rows, a.cols());
  for (std::size_t i = pivots.size(); i < rows.size(); ++i)
    if (sgn(rows[i][a.cols()]) != 0) return std::nullopt;
  Solution sol;
  sol.particular = zero_vector(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = rows[i][a.cols()];
  sol.null_basis = null_space(a);
  return sol;
}

Vector add(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "vector sum");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector subtract(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "vector difference");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vector scale(const Rational& s, const Vector& v) {
  Vector out = v;
  for (auto& x : out) x *= s;
  return out;
}

void axpy(const Rational& s, const Vector& x, Vector& y) {
  require(x.size() == y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += s * x[i];
}

}  // namespace carrier
