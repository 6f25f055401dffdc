#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "birat/poly.hpp"

namespace birat {

// Dense square-or-rectangular matrix of arbitrary-precision integers,
// row-major.
class IMat {
 public:
  IMat() : rows_(0), cols_(0) {}
  IMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

  static IMat identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Int& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Int& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const IMat& o) const = default;

  IMat transposed() const;
  bool is_zero() const;
  Int trace() const;
  Int max_abs_entry() const;

 private:
  size_t rows_, cols_;
  std::vector<Int> a_;
};

IMat imat_add(const IMat& a, const IMat& b);
IMat imat_sub(const IMat& a, const IMat& b);
IMat imat_mul(const IMat& a, const IMat& b);
IMat imat_scale(const IMat& a, const Int& c);
IMat imat_pow(const IMat& a, unsigned long e);
std::vector<Int> imat_apply(const IMat& a, const std::vector<Int>& v);

// det(xI - P), monic, via Faddeev-LeVerrier (all divisions exact over Z).
IPoly char_poly(const IMat& p);

Int imat_det(const IMat& a);

// Evaluates an integer polynomial at a square matrix.
IMat ipoly_eval_matrix(const IPoly& f, const IMat& p);

// Inverse of an integer matrix when it is integral (|det| need not be 1);
// returns nullopt when the exact inverse has non-integer entries.
std::optional<IMat> imat_integer_inverse(const IMat& a);

// Row-style Hermite normal form; returns the nonzero rows (a Z-basis of the
// row lattice).
IMat imat_hnf_row_basis(const IMat& a);

// Solves x * B = v for rectangular B with full row rank (x has B.rows()
// entries); nullopt when there is no rational or no integral solution.
std::optional<std::vector<Int>> solve_integral_in_row_span(const IMat& b,
                                                           const std::vector<Int>& v);

// Random unimodular matrix (det +-1) built from elementary row operations.
IMat random_unimodular(size_t n, std::mt19937_64& rng, int ops = 24);

}  // namespace birat
