#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "eigenid/errors.hpp"

namespace eigenid {

using Complex = std::complex<double>;

// Dense complex matrix, row-major storage. Element access is 0-based; the
// 1-based convention of IndexSet applies only to index-set arguments.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Complex>& data() const { return data_; }

  CMatrix conj_transpose() const;

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
bool all_finite(const CMatrix& m);

// Sorted distinct 1-based indices into [n]; the bound n is checked at the
// point of use, where it is known.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> members);

  static IndexSet full(int n);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }
  int max_member() const { return members_.empty() ? 0 : members_.back(); }
  bool contains(int k) const;

  // [n] \ this, for principal-minor row/column selection.
  IndexSet complement(int n) const;

  bool operator==(const IndexSet& other) const = default;

 private:
  std::vector<int> members_;
};

std::string to_string(const IndexSet& s);

// Self-adjoint matrix with exactly Hermitian storage: entry (j,k) is stored
// as the conjugate of entry (k,j) bit for bit, and the diagonal is real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  std::size_t n() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

  double trace() const;

  friend HermitianMatrix hermitian_from_entries(const CMatrix& entries, double hermitian_tol);
  friend HermitianMatrix principal_minor(const HermitianMatrix& a, const IndexSet& s);
  // Shift by c along the diagonal: A + c*I.
  friend HermitianMatrix shift_diagonal(const HermitianMatrix& a, double c);

 private:
  explicit HermitianMatrix(CMatrix entries) : entries_(std::move(entries)) {}
  CMatrix entries_;
};

// Validates the self-adjointness defect against hermitian_tol, then stores
// the symmetrized (A + A*)/2 so downstream code sees exact Hermitian storage.
HermitianMatrix hermitian_from_entries(const CMatrix& entries, double hermitian_tol);

// max_{j,k} |A(j,k) - conj(A(k,j))| of the raw entries.
double hermitian_defect(const CMatrix& entries);

// Submatrix of A with rows and columns in S deleted.
HermitianMatrix principal_minor(const HermitianMatrix& a, const IndexSet& s);

HermitianMatrix shift_diagonal(const HermitianMatrix& a, double c);

// The |S| x cols(V) matrix made of V's rows indexed by S (ascending order).
CMatrix select_rows(const CMatrix& v, const IndexSet& s);

// Columns of V indexed by S, in ascending order.
CMatrix select_cols(const CMatrix& v, const IndexSet& s);

// LU with partial pivoting; the empty 0x0 matrix has determinant 1.
Complex determinant(const CMatrix& m);

// |det(M)|^2, never negative.
double abs_det_squared(const CMatrix& m);

}  // namespace eigenid
