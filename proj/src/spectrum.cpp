#include "eigenid/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eigenid {

SignedLogReal SignedLogReal::from_value(double x) {
  if (!std::isfinite(x)) throw NonFinite("SignedLogReal: non-finite value");
  SignedLogReal r;
  if (x == 0.0) {
    r.sign_ = 0;
    r.log_mag_ = 0.0;
  } else {
    r.sign_ = (x > 0.0) ? 1 : -1;
    r.log_mag_ = std::log(std::abs(x));
  }
  return r;
}

SignedLogReal& SignedLogReal::operator*=(const SignedLogReal& o) {
  sign_ *= o.sign_;
  log_mag_ = (sign_ == 0) ? 0.0 : log_mag_ + o.log_mag_;
  return *this;
}

SignedLogReal SignedLogReal::pow_int(int e) const {
  if (e < 0) throw Error("SignedLogReal::pow_int: negative exponent");
  SignedLogReal r;  // e = 0 gives the empty product, +1, even for sign 0
  if (e == 0) return r;
  r.sign_ = (sign_ == -1 && (e % 2 == 1)) ? -1 : (sign_ == 0 ? 0 : 1);
  r.log_mag_ = (r.sign_ == 0) ? 0.0 : log_mag_ * static_cast<double>(e);
  return r;
}

double SignedLogReal::value() const {
  if (sign_ == 0) return 0.0;
  static const double log_max = std::log(std::numeric_limits<double>::max());
  if (log_mag_ > log_max) {
    std::ostringstream os;
    os << "SignedLogReal: log-magnitude " << log_mag_ << " exceeds double range";
    throw Overflow(os.str());
  }
  return static_cast<double>(sign_) * std::exp(log_mag_);
}

SignedLogReal operator*(SignedLogReal a, const SignedLogReal& b) {
  a *= b;
  return a;
}

SignedLogReal operator/(SignedLogReal a, const SignedLogReal& b) {
  if (b.sign_ == 0) throw Error("SignedLogReal: division by zero");
  a.sign_ *= b.sign_;
  a.log_mag_ = (a.sign_ == 0) ? 0.0 : a.log_mag_ - b.log_mag_;
  return a;
}

ClusteredSpectrum cluster_eigenvalues(const std::vector<double>& values, double cluster_tol) {
  if (cluster_tol <= 0.0) throw Error("cluster_eigenvalues: cluster_tol must be positive");
  for (double v : values)
    if (!std::isfinite(v)) throw NonFinite("cluster_eigenvalues: non-finite eigenvalue");
  if (!std::is_sorted(values.begin(), values.end()))
    throw Error("cluster_eigenvalues: values must be ascending");

  ClusteredSpectrum out;
  out.n = static_cast<int>(values.size());
  out.cluster_tol = cluster_tol;
  if (values.empty()) return out;

  out.spectral_scale = std::max(1.0, values.back() - values.front());
  const double threshold = cluster_tol * out.spectral_scale;

  std::size_t start = 0;
  for (std::size_t k = 1; k <= values.size(); ++k) {
    const bool boundary = (k == values.size()) || (values[k] - values[k - 1] > threshold);
    if (!boundary) continue;
    EigenvalueCluster c;
    c.multiplicity = static_cast<int>(k - start);
    double sum = 0.0;
    std::vector<int> members;
    members.reserve(k - start);
    for (std::size_t m = start; m < k; ++m) {
      sum += values[m];
      members.push_back(static_cast<int>(m) + 1);
    }
    c.value = sum / static_cast<double>(c.multiplicity);
    c.member_indices = IndexSet(std::move(members));
    out.clusters.push_back(std::move(c));
    start = k;
  }

  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c + 1 < out.clusters.size(); ++c) {
    const int last = out.clusters[c].member_indices.members().back();
    const int first = out.clusters[c + 1].member_indices.members().front();
    min_gap = std::min(min_gap,
                       values[static_cast<std::size_t>(first - 1)] -
                           values[static_cast<std::size_t>(last - 1)]);
  }
  out.gap_margin = min_gap / threshold;  // inf/threshold stays inf for one cluster
  return out;
}

double char_poly_eval(const ClusteredSpectrum& spec, double x) {
  SignedLogReal p = SignedLogReal::one();
  for (const EigenvalueCluster& c : spec.clusters)
    p *= SignedLogReal::from_value(x - c.value).pow_int(c.multiplicity);
  return p.value();
}

SignedLogReal gap_product(const ClusteredSpectrum& spec, int i) {
  if (i < 1 || i > static_cast<int>(spec.clusters.size()))
    throw IndexOutOfRange("gap_product: cluster index out of range");
  const double lam = spec.clusters[static_cast<std::size_t>(i - 1)].value;
  const double floor = spec.cluster_tol * spec.spectral_scale;
  SignedLogReal p = SignedLogReal::one();
  for (std::size_t j = 0; j < spec.clusters.size(); ++j) {
    if (static_cast<int>(j) + 1 == i) continue;
    const double gap = lam - spec.clusters[j].value;
    if (std::abs(gap) <= floor) {
      std::ostringstream os;
      os << "gap_product: clusters " << i << " and " << (j + 1) << " are only " << std::abs(gap)
         << " apart (threshold " << floor << ")";
      throw DegenerateDenominator(os.str());
    }
    p *= SignedLogReal::from_value(gap).pow_int(spec.clusters[j].multiplicity);
  }
  return p;
}

}  // namespace eigenid
