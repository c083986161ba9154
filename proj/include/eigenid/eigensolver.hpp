#pragma once

#include <vector>

#include "eigenid/matrix.hpp"

namespace eigenid {

// Spectral decomposition A = V diag(values) V* with unitary V.
struct EigenDecomposition {
  std::vector<double> values;     // ascending; exactly real by construction
  CMatrix vectors;                // column j is the eigenvector for values[j]
  double residual = 0.0;          // max-entry of |A - V diag(values) V*|
  double unitarity_defect = 0.0;  // max-entry of |V*V - I|
};

// Cyclic Jacobi with complex Givens rotations. Sweeps until the off-diagonal
// Frobenius norm drops to eig_tol * ||A||_F. Eigenvector phases are left as
// the rotations produce them; nothing downstream may depend on phase.
EigenDecomposition eigh(const HermitianMatrix& a, double eig_tol = 1e-12, int max_sweeps = 30);

// Replaces the selected columns with an orthonormal basis of their span
// (modified Gram-Schmidt, one re-orthogonalization pass). Other columns are
// left untouched.
CMatrix orthonormalize_block(const CMatrix& vectors, const IndexSet& cols);

// max-entry of |P*P - I|.
double unitarity_defect(const CMatrix& p);

}  // namespace eigenid
