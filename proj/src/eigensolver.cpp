#include "eigenid/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace eigenid {

namespace {

double off_diagonal_norm(const CMatrix& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (i != j) s += std::norm(w(i, j));
  return std::sqrt(s);
}

// One cyclic sweep of two-sided rotations W <- U* W U, V <- V U, where U acts
// on columns (p, q) and is chosen to zero W(p, q).
void jacobi_sweep(CMatrix& w, CMatrix& v) {
  const std::size_t n = w.rows();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const Complex apq = w(p, q);
      const double g = std::abs(apq);
      if (g == 0.0) continue;
      const double app = w(p, p).real();
      const double aqq = w(q, q).real();
      const double tau = (aqq - app) / (2.0 * g);
      // Smaller-magnitude root of t^2 + 2*tau*t - 1 = 0, written to avoid
      // cancellation; hypot keeps sqrt(1 + tau^2) finite for huge tau.
      const double t = (tau >= 0.0) ? 1.0 / (tau + std::hypot(1.0, tau))
                                    : -1.0 / (-tau + std::hypot(1.0, tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const Complex s = (t * c) * (apq / g);
      const Complex s_conj = std::conj(s);
      for (std::size_t k = 0; k < n; ++k) {
        if (k != p && k != q) {
          const Complex wkp = w(k, p);
          const Complex wkq = w(k, q);
          w(k, p) = c * wkp - s_conj * wkq;
          w(k, q) = s * wkp + c * wkq;
          w(p, k) = std::conj(w(k, p));
          w(q, k) = std::conj(w(k, q));
        }
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s_conj * vkq;
        v(k, q) = s * vkp + c * vkq;
      }
      w(p, p) = Complex(app - t * g, 0.0);
      w(q, q) = Complex(aqq + t * g, 0.0);
      w(p, q) = Complex(0.0, 0.0);
      w(q, p) = Complex(0.0, 0.0);
    }
  }
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& a, double eig_tol, int max_sweeps) {
  if (eig_tol <= 0.0) throw Error("eigh: eig_tol must be positive");
  const std::size_t n = a.n();
  CMatrix w = a.entries();
  CMatrix v = CMatrix::identity(n);
  const double norm_f = frobenius_norm(w);
  const double target = eig_tol * norm_f;

  int sweeps = 0;
  double off = off_diagonal_norm(w);
  while (off > target) {
    if (sweeps == max_sweeps) {
      std::ostringstream os;
      os << "eigh: off-diagonal norm " << off << " still above " << target << " after "
         << max_sweeps << " sweeps";
      throw NoConvergence(off, os.str());
    }
    jacobi_sweep(w, v);
    ++sweeps;
    off = off_diagonal_norm(w);
  }

  EigenDecomposition d;
  d.values.resize(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });
  d.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    d.values[j] = w(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) d.vectors(k, j) = v(k, order[j]);
  }

  CMatrix vd = d.vectors;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) vd(k, j) *= d.values[j];
  d.residual = max_abs(vd * d.vectors.conj_transpose() - a.entries());
  d.unitarity_defect = max_abs(d.vectors.conj_transpose() * d.vectors - CMatrix::identity(n));
  return d;
}

CMatrix orthonormalize_block(const CMatrix& vectors, const IndexSet& cols) {
  if (cols.max_member() > static_cast<int>(vectors.cols()))
    throw IndexOutOfRange("orthonormalize_block: column index exceeds matrix");
  CMatrix out = vectors;
  const std::vector<int>& idx = cols.members();
  const std::size_t n = vectors.rows();
  for (std::size_t jj = 0; jj < idx.size(); ++jj) {
    const std::size_t j = static_cast<std::size_t>(idx[jj] - 1);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t ii = 0; ii < jj; ++ii) {
        const std::size_t i = static_cast<std::size_t>(idx[ii] - 1);
        Complex coeff(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) coeff += std::conj(out(k, i)) * out(k, j);
        for (std::size_t k = 0; k < n; ++k) out(k, j) -= coeff * out(k, i);
      }
    }
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) norm_sq += std::norm(out(k, j));
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-13)
      throw RankDeficient("orthonormalize_block: column norm collapsed during elimination");
    for (std::size_t k = 0; k < n; ++k) out(k, j) /= norm;
  }
  return out;
}

double unitarity_defect(const CMatrix& p) {
  if (!p.is_square()) throw NotSquare("unitarity_defect: matrix is not square");
  return max_abs(p.conj_transpose() * p - CMatrix::identity(p.rows()));
}

}  // namespace eigenid
