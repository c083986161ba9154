#pragma once

#include <utility>
#include <vector>

#include "eigenid/eigensolver.hpp"
#include "eigenid/matrix.hpp"
#include "eigenid/spectrum.hpp"

namespace eigenid {

struct Tolerances {
  double eig_tol = 1e-12;
  int max_sweeps = 30;
  double cluster_tol = 1e-8;
  double unitary_tol = 1e-10;
};

// One spectral-vs-eigenvector comparison for a cluster i and row subset S.
struct IdentityEvaluation {
  int cluster_index = 0;  // 1-based
  IndexSet subset;
  double lhs = 0.0;  // |det of the S-rows of the cluster's eigenvector block|^2
  double rhs = 0.0;  // spectral product: minor eigenvalue gaps over cluster gaps
  double abs_err = 0.0;
  double rel_err = 0.0;  // abs_err / max(lhs, rhs, 1e-300)
  int numerator_sign = 0;
  double gap_margin = 0.0;

  bool operator==(const IdentityEvaluation& other) const = default;
};

struct RhsResult {
  double value = 0.0;
  int numerator_sign = 0;
  // Smallest |lambda_i - lambda_j(M_S)| seen in the numerator; a tiny value
  // flags a near-cancelling factor whose relative accuracy limits the result.
  double min_factor_abs = 0.0;
};

// |det(rows S of cluster i's eigenvector block)|^2. The caller must have
// re-orthonormalized degenerate blocks (IdentityEvaluator does this).
double identity_lhs(const EigenDecomposition& decomp, const ClusteredSpectrum& spec, int i,
                    const IndexSet& s);

// prod_j (lambda_i - lambda_j(M_S)) / prod_{j != i} (lambda_i - lambda_j)^{mu_j}
// where M_S drops the rows and columns in S. Tiny negatives (interlacing makes
// the exact value nonnegative) clamp to zero; material negatives throw.
RhsResult identity_rhs(const HermitianMatrix& a, const ClusteredSpectrum& spec, int i,
                       const IndexSet& s, double eig_tol = 1e-12, int max_sweeps = 30);

// Owns one decomposition + clustering of A so that sweeps over many (i, S)
// pairs share the work. Immutable after construction; safe to use from many
// threads at once.
class IdentityEvaluator {
 public:
  IdentityEvaluator(const HermitianMatrix& a, const Tolerances& tols);

  const EigenDecomposition& decomposition() const { return decomp_; }
  const ClusteredSpectrum& spectrum() const { return spec_; }
  const HermitianMatrix& matrix() const { return a_; }

  IdentityEvaluation evaluate(int cluster_index, const IndexSet& s) const;

  // Sum of the lhs over every subset of matching size; 1 for an orthonormal
  // block (squared Plucker coordinates sum via Cauchy-Binet).
  double subset_sum(int cluster_index) const;

 private:
  HermitianMatrix a_;
  Tolerances tols_;
  EigenDecomposition decomp_;  // degenerate blocks re-orthonormalized
  ClusteredSpectrum spec_;
};

// One-shot convenience wrappers over IdentityEvaluator.
IdentityEvaluation evaluate_identity(const HermitianMatrix& a, int i, const IndexSet& s,
                                     const Tolerances& tols = {});
double sum_over_subsets(const HermitianMatrix& a, int i, const Tolerances& tols = {});

// (|det P11|^2, |det P22|^2) for the r / n-r diagonal block split of a
// unitary P; the two agree for exactly unitary P.
std::pair<double, double> block_det_squares(const CMatrix& p, int r, double unitary_tol = 1e-10);

// Squared magnitude of component k of the eigenvector for a simple
// (multiplicity-1) cluster i, computed purely from eigenvalues.
double eigenvector_component_sq(const HermitianMatrix& a, int i, int k,
                                const Tolerances& tols = {});

// All subsets of {1..n} of size mu, lexicographic.
std::vector<IndexSet> enumerate_subsets(int n, int mu);

}  // namespace eigenid
