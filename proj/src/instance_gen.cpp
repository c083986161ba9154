#include "eigenid/instance_gen.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace eigenid {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl64(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(Seed seed) {
  std::uint64_t sm = seed;
  for (std::uint64_t& w : s_) w = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl64(s_[3], 45);
  return result;
}

double Rng::uniform() {
  // 53-bit mantissa shifted into (0, 1]; never exactly zero, so safe to log.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();  // sequenced: real part consumes the stream first
  const double im = gaussian();
  return Complex(re, im);
}

int SpectrumSpec::total_n() const {
  int n = 0;
  for (const auto& [value, mult] : pairs) n += mult;
  return n;
}

namespace {

void validate_spectrum(const SpectrumSpec& spec) {
  if (spec.pairs.empty()) throw ParseError("spectrum: at least one value required");
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    if (!std::isfinite(spec.pairs[i].first)) throw ParseError("spectrum: non-finite value");
    if (spec.pairs[i].second < 1) throw ParseError("spectrum: multiplicity must be >= 1");
    if (i > 0 && !(spec.pairs[i].first > spec.pairs[i - 1].first))
      throw ParseError("spectrum: values must be strictly increasing");
  }
}

}  // namespace

SpectrumSpec parse_spectrum(const std::string& text) {
  SpectrumSpec spec;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string part = text.substr(pos, comma - pos);
    const std::size_t colon = part.find(':');
    if (colon == std::string::npos)
      throw ParseError("spectrum: expected value:multiplicity, got \"" + part + "\"");
    try {
      std::size_t used = 0;
      const double value = std::stod(part.substr(0, colon), &used);
      if (used != colon) throw ParseError("spectrum: trailing junk in value");
      const std::string mult_text = part.substr(colon + 1);
      const int mult = std::stoi(mult_text, &used);
      if (used != mult_text.size()) throw ParseError("spectrum: trailing junk in multiplicity");
      spec.pairs.emplace_back(value, mult);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("spectrum: cannot parse \"" + part + "\"");
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  validate_spectrum(spec);
  return spec;
}

CMatrix haar_unitary(int n, Seed seed) {
  if (n < 1) throw Error("haar_unitary: order must be >= 1");
  Rng rng(seed);
  const std::size_t un = static_cast<std::size_t>(n);
  CMatrix r(un, un);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) r(i, j) = rng.complex_gaussian();

  CMatrix q = CMatrix::identity(un);
  std::vector<Complex> v(un);
  for (std::size_t k = 0; k < un; ++k) {
    double norm_sq = 0.0;
    for (std::size_t m = k; m < un; ++m) norm_sq += std::norm(r(m, k));
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) continue;
    const Complex x0 = r(k, k);
    const double ax0 = std::abs(x0);
    const Complex phase = (ax0 == 0.0) ? Complex(1.0, 0.0) : x0 / ax0;
    // v = x + phase * ||x|| * e_1: same-phase shift, no cancellation
    v[k] = x0 + phase * norm;
    for (std::size_t m = k + 1; m < un; ++m) v[m] = r(m, k);
    double vsq = 0.0;
    for (std::size_t m = k; m < un; ++m) vsq += std::norm(v[m]);
    const double tau = 2.0 / vsq;
    // left-apply the reflection to the remaining columns of R
    for (std::size_t c = k; c < un; ++c) {
      Complex dot(0.0, 0.0);
      for (std::size_t m = k; m < un; ++m) dot += std::conj(v[m]) * r(m, c);
      dot *= tau;
      for (std::size_t m = k; m < un; ++m) r(m, c) -= dot * v[m];
    }
    // right-apply to the accumulated Q (reflections are Hermitian)
    for (std::size_t row = 0; row < un; ++row) {
      Complex dot(0.0, 0.0);
      for (std::size_t m = k; m < un; ++m) dot += q(row, m) * v[m];
      dot *= tau;
      for (std::size_t m = k; m < un; ++m) q(row, m) -= dot * std::conj(v[m]);
    }
  }

  // absorb the R-diagonal phases into Q's columns; plain QR is not Haar
  for (std::size_t j = 0; j < un; ++j) {
    const Complex d = r(j, j);
    const double ad = std::abs(d);
    const Complex ph = (ad == 0.0) ? Complex(1.0, 0.0) : d / ad;
    for (std::size_t i = 0; i < un; ++i) q(i, j) *= ph;
  }
  return q;
}

HermitianMatrix hermitian_with_spectrum(const SpectrumSpec& spec, Seed seed) {
  validate_spectrum(spec);
  std::vector<double> values;
  double vmax = 0.0;
  for (const auto& [value, mult] : spec.pairs) {
    vmax = std::max(vmax, std::abs(value));
    values.insert(values.end(), static_cast<std::size_t>(mult), value);
  }
  const std::size_t n = values.size();
  const CMatrix u = haar_unitary(static_cast<int>(n), seed);
  CMatrix ud = u;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) ud(i, j) *= values[j];
  const CMatrix b = ud * u.conj_transpose();
  return hermitian_from_entries(b, 1e-10 * std::max(1.0, vmax));
}

HermitianMatrix random_hermitian(int n, Seed seed) {
  if (n < 1) throw Error("random_hermitian: order must be >= 1");
  Rng rng(seed);
  const std::size_t un = static_cast<std::size_t>(n);
  CMatrix g(un, un);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) g(i, j) = rng.complex_gaussian();
  CMatrix b(un, un);
  for (std::size_t i = 0; i < un; ++i) {
    b(i, i) = Complex(g(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < un; ++j) {
      const Complex z = 0.5 * (g(i, j) + std::conj(g(j, i)));
      b(i, j) = z;
      b(j, i) = std::conj(z);
    }
  }
  // the explicit mirror above makes the defect exactly zero
  return hermitian_from_entries(b, 0.0);
}

}  // namespace eigenid
