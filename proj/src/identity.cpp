#include "eigenid/identity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eigenid {

namespace {

const EigenvalueCluster& cluster_at(const ClusteredSpectrum& spec, int i) {
  if (i < 1 || i > static_cast<int>(spec.clusters.size()))
    throw IndexOutOfRange("cluster index out of range");
  return spec.clusters[static_cast<std::size_t>(i - 1)];
}

void check_subset_size(const EigenvalueCluster& c, const IndexSet& s) {
  if (static_cast<int>(s.size()) != c.multiplicity) {
    std::ostringstream os;
    os << "subset size " << s.size() << " does not match cluster multiplicity "
       << c.multiplicity;
    throw SubsetSizeMismatch(os.str());
  }
}

}  // namespace

double identity_lhs(const EigenDecomposition& decomp, const ClusteredSpectrum& spec, int i,
                    const IndexSet& s) {
  const EigenvalueCluster& c = cluster_at(spec, i);
  check_subset_size(c, s);
  const CMatrix block = select_cols(decomp.vectors, c.member_indices);
  return abs_det_squared(select_rows(block, s));
}

RhsResult identity_rhs(const HermitianMatrix& a, const ClusteredSpectrum& spec, int i,
                       const IndexSet& s, double eig_tol, int max_sweeps) {
  const EigenvalueCluster& c = cluster_at(spec, i);
  check_subset_size(c, s);
  const HermitianMatrix minor = principal_minor(a, s);
  const EigenDecomposition sub = eigh(minor, eig_tol, max_sweeps);

  SignedLogReal numerator = SignedLogReal::one();
  double min_factor = std::numeric_limits<double>::infinity();
  for (double mu_j : sub.values) {
    const double factor = c.value - mu_j;
    numerator *= SignedLogReal::from_value(factor);
    min_factor = std::min(min_factor, std::abs(factor));
  }

  const SignedLogReal quotient = numerator / gap_product(spec, i);

  RhsResult r;
  r.numerator_sign = numerator.sign();
  r.min_factor_abs = min_factor;
  r.value = quotient.value();
  if (r.value < 0.0) {
    // The exact value is a squared determinant, hence nonnegative; tiny
    // negatives are roundoff, anything material means the clustering or the
    // decomposition is broken and must not be reported as a number.
    const double floor = -1e-10 * std::max(1.0, std::abs(r.value));
    if (r.value >= floor) {
      r.value = 0.0;
    } else {
      std::ostringstream os;
      os << "spectral side is materially negative (" << r.value << ") for cluster " << i
         << ", subset " << to_string(s);
      throw NegativeRhs(r.value, os.str());
    }
  }
  return r;
}

IdentityEvaluator::IdentityEvaluator(const HermitianMatrix& a, const Tolerances& tols)
    : a_(a), tols_(tols) {
  decomp_ = eigh(a_, tols_.eig_tol, tols_.max_sweeps);
  spec_ = cluster_eigenvalues(decomp_.values, tols_.cluster_tol);
  for (const EigenvalueCluster& c : spec_.clusters)
    if (c.multiplicity > 1)
      decomp_.vectors = orthonormalize_block(decomp_.vectors, c.member_indices);
}

IdentityEvaluation IdentityEvaluator::evaluate(int cluster_index, const IndexSet& s) const {
  IdentityEvaluation out;
  out.cluster_index = cluster_index;
  out.subset = s;
  out.gap_margin = spec_.gap_margin;
  out.lhs = identity_lhs(decomp_, spec_, cluster_index, s);
  const RhsResult rhs = identity_rhs(a_, spec_, cluster_index, s, tols_.eig_tol, tols_.max_sweeps);
  out.rhs = rhs.value;
  out.numerator_sign = rhs.numerator_sign;
  out.abs_err = std::abs(out.lhs - out.rhs);
  out.rel_err = out.abs_err / std::max({out.lhs, out.rhs, 1e-300});
  return out;
}

double IdentityEvaluator::subset_sum(int cluster_index) const {
  const EigenvalueCluster& c = cluster_at(spec_, cluster_index);
  double sum = 0.0;
  for (const IndexSet& s : enumerate_subsets(spec_.n, c.multiplicity))
    sum += identity_lhs(decomp_, spec_, cluster_index, s);
  return sum;
}

IdentityEvaluation evaluate_identity(const HermitianMatrix& a, int i, const IndexSet& s,
                                     const Tolerances& tols) {
  return IdentityEvaluator(a, tols).evaluate(i, s);
}

double sum_over_subsets(const HermitianMatrix& a, int i, const Tolerances& tols) {
  return IdentityEvaluator(a, tols).subset_sum(i);
}

std::pair<double, double> block_det_squares(const CMatrix& p, int r, double unitary_tol) {
  if (!p.is_square()) throw NotSquare("block_det_squares: matrix is not square");
  const int n = static_cast<int>(p.rows());
  if (r < 0 || r > n) throw IndexOutOfRange("block_det_squares: split outside [0, n]");
  const double defect = unitarity_defect(p);
  if (defect > unitary_tol) {
    std::ostringstream os;
    os << "block_det_squares: unitarity defect " << defect << " exceeds tolerance "
       << unitary_tol;
    throw NotUnitary(defect, os.str());
  }
  auto corner = [&](std::size_t offset, std::size_t size) {
    CMatrix b(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) b(i, j) = p(offset + i, offset + j);
    return b;
  };
  const std::size_t ru = static_cast<std::size_t>(r);
  return {abs_det_squared(corner(0, ru)),
          abs_det_squared(corner(ru, static_cast<std::size_t>(n) - ru))};
}

double eigenvector_component_sq(const HermitianMatrix& a, int i, int k, const Tolerances& tols) {
  const IdentityEvaluator eval(a, tols);
  const EigenvalueCluster& c = cluster_at(eval.spectrum(), i);
  if (c.multiplicity != 1) {
    std::ostringstream os;
    os << "cluster " << i << " has multiplicity " << c.multiplicity
       << "; the component form needs a simple eigenvalue";
    throw MultiplicityNotOne(os.str());
  }
  if (k < 1 || k > eval.spectrum().n)
    throw IndexOutOfRange("eigenvector_component_sq: component index out of range");
  return eval.evaluate(i, IndexSet({k})).rhs;
}

std::vector<IndexSet> enumerate_subsets(int n, int mu) {
  if (n < 0 || mu < 0 || mu > n)
    throw IndexOutOfRange("enumerate_subsets: need 0 <= mu <= n");
  std::vector<IndexSet> out;
  std::vector<int> cur(static_cast<std::size_t>(mu));
  for (int i = 0; i < mu; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(IndexSet(cur));
    // advance to the next combination in lexicographic order
    int pos = mu - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - (mu - 1 - pos)) --pos;
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < mu; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace eigenid
