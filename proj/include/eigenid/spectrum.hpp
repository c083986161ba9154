#pragma once

#include <limits>
#include <vector>

#include "eigenid/matrix.hpp"

namespace eigenid {

// Sign plus natural-log magnitude: the accumulator for every spectral product
// in this library, so that products of up to n gaps cannot silently
// under/overflow a plain double.
class SignedLogReal {
 public:
  SignedLogReal() = default;  // multiplicative identity

  static SignedLogReal one() { return SignedLogReal(); }
  static SignedLogReal from_value(double x);

  int sign() const { return sign_; }
  double log_mag() const { return log_mag_; }  // meaningless when sign() == 0

  SignedLogReal& operator*=(const SignedLogReal& o);
  SignedLogReal pow_int(int e) const;

  // Converts back to double; throws Overflow when the magnitude exceeds the
  // representable range. Underflow rounds to zero silently.
  double value() const;

  friend SignedLogReal operator/(SignedLogReal a, const SignedLogReal& b);

 private:
  int sign_ = 1;
  double log_mag_ = 0.0;
};

SignedLogReal operator*(SignedLogReal a, const SignedLogReal& b);

// One distinct eigenvalue with its algebraic multiplicity.
struct EigenvalueCluster {
  double value = 0.0;       // representative: mean of the member eigenvalues
  int multiplicity = 0;
  IndexSet member_indices;  // 1-based positions in the ascending eigenvalue list
};

struct ClusteredSpectrum {
  std::vector<EigenvalueCluster> clusters;  // ascending by value
  int n = 0;
  // Minimum inter-cluster gap divided by the effective clustering threshold;
  // +inf when there are fewer than two clusters. Small values mean the
  // multiplicity assignment is fragile.
  double gap_margin = std::numeric_limits<double>::infinity();
  double cluster_tol = 0.0;
  double spectral_scale = 1.0;  // max(1, value range); sets the threshold scale
};

// Greedy single-linkage scan over the ascending values: adjacent values whose
// gap is at most cluster_tol * spectral_scale share a cluster.
ClusteredSpectrum cluster_eigenvalues(const std::vector<double>& values, double cluster_tol);

// Characteristic polynomial prod_i (x - value_i)^{multiplicity_i} at x.
double char_poly_eval(const ClusteredSpectrum& spec, double x);

// prod_{j != i} (value_i - value_j)^{multiplicity_j}; i is 1-based. The empty
// product (single cluster) is +1.
SignedLogReal gap_product(const ClusteredSpectrum& spec, int i);

}  // namespace eigenid
