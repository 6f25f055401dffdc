#include "birat/matrix.hpp"

#include <algorithm>

#include "birat/errors.hpp"

namespace birat {

IMat IMat::identity(size_t n) {
  IMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::transposed() const {
  IMat t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool IMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

Int IMat::trace() const {
  Int t = 0;
  for (size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

Int IMat::max_abs_entry() const {
  Int m = 0;
  for (const auto& x : a_) {
    Int ax = abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

IMat imat_add(const IMat& a, const IMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DataError("matrix shape mismatch");
  IMat r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

IMat imat_sub(const IMat& a, const IMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DataError("matrix shape mismatch");
  IMat r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  if (a.cols() != b.rows()) throw DataError("matrix shape mismatch in product");
  IMat r(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

IMat imat_scale(const IMat& a, const Int& c) {
  IMat r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) * c;
  return r;
}

IMat imat_pow(const IMat& a, unsigned long e) {
  if (a.rows() != a.cols()) throw DataError("matrix power needs a square matrix");
  IMat r = IMat::identity(a.rows());
  IMat base = a;
  while (e > 0) {
    if (e & 1UL) r = imat_mul(r, base);
    e >>= 1UL;
    if (e) base = imat_mul(base, base);
  }
  return r;
}

std::vector<Int> imat_apply(const IMat& a, const std::vector<Int>& v) {
  if (a.cols() != v.size()) throw DataError("matrix/vector size mismatch");
  std::vector<Int> r(a.rows(), Int(0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
  return r;
}

IPoly char_poly(const IMat& p) {
  if (p.rows() != p.cols()) throw DataError("characteristic polynomial needs a square matrix");
  const size_t d = p.rows();
  // Faddeev-LeVerrier: c[d] = 1, M_1 = I, c[d-k] = -tr(P*M_k)/k,
  // M_{k+1} = P*M_k + c[d-k]*I. Divisions are exact over the integers.
  IPoly c(d + 1, Int(0));
  c[d] = 1;
  IMat m = IMat::identity(d);
  for (size_t k = 1; k <= d; ++k) {
    IMat pm = imat_mul(p, m);
    Int t = pm.trace();
    Int ck;
    mpz_divexact_ui(ck.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
    ck = -ck;
    c[d - k] = ck;
    if (k < d) {
      m = pm;
      for (size_t i = 0; i < d; ++i) m.at(i, i) += ck;
    }
  }
  return c;
}

Int imat_det(const IMat& a) {
  IPoly cp = char_poly(a);
  Int det = cp[0];
  if (a.rows() % 2 == 1) det = -det;
  return det;
}

IMat ipoly_eval_matrix(const IPoly& f, const IMat& p) {
  const size_t d = p.rows();
  IMat r(d, d);
  for (size_t i = f.size(); i-- > 0;) {
    r = imat_mul(r, p);
    for (size_t k = 0; k < d; ++k) r.at(k, k) += f[i];
  }
  return r;
}

std::optional<IMat> imat_integer_inverse(const IMat& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const size_t n = a.rows();
  // Gaussian elimination over the rationals on [A | I].
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = Rat(a.at(i, j));
    m[i][n + i] = 1;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    Rat inv = 1 / m[col][col];
    for (size_t j = 0; j < 2 * n; ++j) m[col][j] *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  IMat out(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (m[i][n + j].get_den() != 1) return std::nullopt;
      out.at(i, j) = m[i][n + j].get_num();
    }
  return out;
}

IMat imat_hnf_row_basis(const IMat& a) {
  size_t rows = a.rows(), cols = a.cols();
  std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m[i][j] = a.at(i, j);

  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // Reduce column c below row r by Euclidean row operations.
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (m[i][c] != 0 && (best == rows || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == rows) break;
      std::swap(m[r], m[best]);
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][c] != 0) {
      if (m[r][c] < 0)
        for (size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
      // Reduce entries above the pivot.
      for (size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
      }
      ++r;
    }
  }
  IMat out(r, cols);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < cols; ++j) out.at(i, j) = m[i][j];
  return out;
}

std::optional<std::vector<Int>> solve_integral_in_row_span(const IMat& b,
                                                           const std::vector<Int>& v) {
  const size_t k = b.rows(), d = b.cols();
  if (v.size() != d) throw DataError("vector size mismatch");
  // Solve x * B = v by elimination on the transposed system B^T x^T = v^T.
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(k + 1, Rat(0)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < k; ++j) m[i][j] = Rat(b.at(j, i));
    m[i][k] = Rat(v[i]);
  }
  size_t row = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < k && row < d; ++col) {
    size_t piv = row;
    while (piv < d && m[piv][col] == 0) ++piv;
    if (piv == d) continue;
    std::swap(m[piv], m[row]);
    Rat inv = 1 / m[row][col];
    for (size_t j = col; j <= k; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < d; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = col; j <= k; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (size_t i = row; i < d; ++i)
    if (m[i][k] != 0) return std::nullopt;  // inconsistent
  std::vector<Int> x(k, Int(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) {
    if (m[i][k].get_den() != 1) return std::nullopt;
    x[pivot_col[i]] = m[i][k].get_num();
  }
  return x;
}

IMat random_unimodular(size_t n, std::mt19937_64& rng, int ops) {
  IMat u = IMat::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> kind(0, 3);
  for (int t = 0; t < ops; ++t) {
    size_t i = idx(rng), j = idx(rng);
    switch (kind(rng)) {
      case 0:
      case 1: {
        if (i == j) break;
        Int c(coeff(rng));
        for (size_t col = 0; col < n; ++col) u.at(i, col) += c * u.at(j, col);
        break;
      }
      case 2:
        if (i != j)
          for (size_t col = 0; col < n; ++col) std::swap(u.at(i, col), u.at(j, col));
        break;
      default:
        for (size_t col = 0; col < n; ++col) u.at(i, col) = -u.at(i, col);
        break;
    }
  }
  return u;
}

}  // namespace birat
