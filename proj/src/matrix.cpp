#include "eigenid/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace eigenid {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

CMatrix CMatrix::conj_transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw SizeMismatch("matrix product: inner dimensions differ");
  CMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw SizeMismatch("matrix sum: shapes differ");
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw SizeMismatch("matrix difference: shapes differ");
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

double max_abs(const CMatrix& m) {
  double v = 0.0;
  for (const Complex& z : m.data()) v = std::max(v, std::abs(z));
  return v;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const Complex& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

bool all_finite(const CMatrix& m) {
  for (const Complex& z : m.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

IndexSet::IndexSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1)
      throw IndexOutOfRange("index set members must be >= 1 (indices are 1-based)");
    if (i > 0 && members_[i] == members_[i - 1])
      throw IndexOutOfRange("index set members must be distinct");
  }
}

IndexSet IndexSet::full(int n) {
  std::vector<int> v(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return IndexSet(std::move(v));
}

bool IndexSet::contains(int k) const {
  return std::binary_search(members_.begin(), members_.end(), k);
}

IndexSet IndexSet::complement(int n) const {
  if (max_member() > n) throw IndexOutOfRange("index set exceeds dimension");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n) - members_.size());
  for (int k = 1; k <= n; ++k)
    if (!contains(k)) out.push_back(k);
  return IndexSet(std::move(out));
}

std::string to_string(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.members().size(); ++i) {
    if (i > 0) os << ',';
    os << s.members()[i];
  }
  os << '}';
  return os.str();
}

double hermitian_defect(const CMatrix& entries) {
  double defect = 0.0;
  for (std::size_t i = 0; i < entries.rows(); ++i)
    for (std::size_t j = 0; j < entries.cols(); ++j)
      defect = std::max(defect, std::abs(entries(i, j) - std::conj(entries(j, i))));
  return defect;
}

HermitianMatrix hermitian_from_entries(const CMatrix& entries, double hermitian_tol) {
  if (!entries.is_square()) throw NotSquare("hermitian_from_entries: matrix is not square");
  if (!all_finite(entries)) throw NonFinite("hermitian_from_entries: non-finite entry");
  const double defect = hermitian_defect(entries);
  if (defect > hermitian_tol) {
    std::ostringstream os;
    os << "hermitian_from_entries: self-adjointness defect " << defect << " exceeds tolerance "
       << hermitian_tol;
    throw NotHermitian(defect, os.str());
  }
  const std::size_t n = entries.rows();
  CMatrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    sym(i, i) = Complex(entries(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (entries(i, j) + std::conj(entries(j, i)));
      sym(i, j) = z;
      sym(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(std::move(sym));
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n(); ++i) t += entries_(i, i).real();
  return t;
}

HermitianMatrix principal_minor(const HermitianMatrix& a, const IndexSet& s) {
  const int n = static_cast<int>(a.n());
  if (s.max_member() > n) throw IndexOutOfRange("principal_minor: index exceeds matrix order");
  const IndexSet keep = s.complement(n);
  const std::size_t m = keep.size();
  CMatrix sub(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = static_cast<std::size_t>(keep.members()[i] - 1);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t c = static_cast<std::size_t>(keep.members()[j] - 1);
      sub(i, j) = a(r, c);
    }
  }
  // Selection from exactly Hermitian storage stays exactly Hermitian.
  return HermitianMatrix(std::move(sub));
}

HermitianMatrix shift_diagonal(const HermitianMatrix& a, double c) {
  CMatrix m = a.entries();
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += Complex(c, 0.0);
  return HermitianMatrix(std::move(m));
}

CMatrix select_rows(const CMatrix& v, const IndexSet& s) {
  if (s.size() != v.cols())
    throw SizeMismatch("select_rows: |S| must equal the number of columns");
  if (s.max_member() > static_cast<int>(v.rows()))
    throw IndexOutOfRange("select_rows: row index exceeds matrix");
  CMatrix out(s.size(), v.cols());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t r = static_cast<std::size_t>(s.members()[i] - 1);
    for (std::size_t j = 0; j < v.cols(); ++j) out(i, j) = v(r, j);
  }
  return out;
}

CMatrix select_cols(const CMatrix& v, const IndexSet& s) {
  if (s.max_member() > static_cast<int>(v.cols()))
    throw IndexOutOfRange("select_cols: column index exceeds matrix");
  CMatrix out(v.rows(), s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const std::size_t c = static_cast<std::size_t>(s.members()[j] - 1);
    for (std::size_t i = 0; i < v.rows(); ++i) out(i, j) = v(i, c);
  }
  return out;
}

Complex determinant(const CMatrix& m) {
  if (!m.is_square()) throw NotSquare("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return Complex(1.0, 0.0);
  CMatrix lu = m;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double cand = std::abs(lu(r, k));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0.0) return Complex(0.0, 0.0);
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(pivot, c));
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex factor = lu(r, k) / lu(k, k);
      lu(r, k) = Complex(0.0, 0.0);
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= factor * lu(k, c);
    }
  }
  Complex det(static_cast<double>(sign), 0.0);
  for (std::size_t k = 0; k < n; ++k) det *= lu(k, k);
  return det;
}

double abs_det_squared(const CMatrix& m) {
  return std::norm(determinant(m));
}

}  // namespace eigenid
