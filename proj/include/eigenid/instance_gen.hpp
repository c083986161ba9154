#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eigenid/matrix.hpp"

namespace eigenid {

using Seed = std::uint64_t;

// xoshiro256++ with splitmix64 state expansion. The exact stream contract
// (draw order, uniform mapping, Box-Muller pairing) is documented in the
// README so other languages can reproduce every fixture bit for bit.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next_u64();
  double uniform();            // in (0, 1]
  double gaussian();           // standard normal; Box-Muller, second value cached
  Complex complex_gaussian();  // real part drawn first, then imaginary

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Prescribed spectrum: strictly increasing values with multiplicities >= 1.
struct SpectrumSpec {
  std::vector<std::pair<double, int>> pairs;

  int total_n() const;
};

// Text form "v1:m1,v2:m2,..." e.g. "1:2,2:1". Throws ParseError on malformed
// input, non-increasing values, or a multiplicity below 1.
SpectrumSpec parse_spectrum(const std::string& text);

// QR of a square complex Gaussian matrix with the R-diagonal phases absorbed
// into Q's columns, which makes the distribution Haar.
CMatrix haar_unitary(int n, Seed seed);

// U diag(values-with-multiplicity) U* for Haar U: exact multiplicities by
// construction, never by perturbation.
HermitianMatrix hermitian_with_spectrum(const SpectrumSpec& spec, Seed seed);

// (G + G*)/2 for complex Gaussian G; generically a simple spectrum.
HermitianMatrix random_hermitian(int n, Seed seed);

}  // namespace eigenid
