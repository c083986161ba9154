#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "eigenid/instance_gen.hpp"
#include "eigenid/spectrum.hpp"

using namespace eigenid;

TEST_CASE("signed log representation round-trips") {
  CHECK(SignedLogReal::one().value() == 1.0);
  CHECK(SignedLogReal::from_value(0.0).sign() == 0);
  CHECK(SignedLogReal::from_value(0.0).value() == 0.0);
  CHECK(SignedLogReal::from_value(-2.0).value() == doctest::Approx(-2.0));
  CHECK(SignedLogReal::from_value(3.5).value() == doctest::Approx(3.5));
  CHECK_THROWS_AS(SignedLogReal::from_value(std::numeric_limits<double>::infinity()),
                  NonFinite);
}

TEST_CASE("signed log products and quotients") {
  const SignedLogReal a = SignedLogReal::from_value(-3.0);
  const SignedLogReal b = SignedLogReal::from_value(2.0);
  CHECK((a * b).value() == doctest::Approx(-6.0));
  CHECK((a / b).value() == doctest::Approx(-1.5));
  CHECK((a * SignedLogReal::from_value(0.0)).value() == 0.0);
  CHECK((SignedLogReal::from_value(0.0) / a).value() == 0.0);
  CHECK_THROWS_AS(a / SignedLogReal::from_value(0.0), Error);

  CHECK(a.pow_int(2).value() == doctest::Approx(9.0));
  CHECK(a.pow_int(3).value() == doctest::Approx(-27.0));
  CHECK(a.pow_int(0).value() == 1.0);
  CHECK(SignedLogReal::from_value(0.0).pow_int(0).value() == 1.0);
  CHECK(SignedLogReal::from_value(0.0).pow_int(2).value() == 0.0);
  CHECK_THROWS_AS(a.pow_int(-1), Error);
}

TEST_CASE("signed log magnitudes survive scales a double cannot") {
  SignedLogReal p = SignedLogReal::one();
  for (int i = 0; i < 100; ++i) p *= SignedLogReal::from_value(1e200);
  CHECK(p.sign() == 1);
  CHECK(p.log_mag() == doctest::Approx(100.0 * std::log(1e200)));
  CHECK_THROWS_AS(p.value(), Overflow);
  // dividing the huge magnitude back out recovers a plain number
  SignedLogReal q = p;
  for (int i = 0; i < 100; ++i) q = q / SignedLogReal::from_value(1e200);
  CHECK(q.value() == doctest::Approx(1.0));
}

TEST_CASE("exact repeats cluster together") {
  const ClusteredSpectrum s = cluster_eigenvalues({1.0, 1.0, 2.0}, 1e-8);
  REQUIRE(s.clusters.size() == 2);
  CHECK(s.clusters[0].value == 1.0);
  CHECK(s.clusters[0].multiplicity == 2);
  CHECK(s.clusters[0].member_indices == IndexSet(std::vector<int>{1, 2}));
  CHECK(s.clusters[1].value == 2.0);
  CHECK(s.clusters[1].multiplicity == 1);
  CHECK(s.n == 3);
}

TEST_CASE("well separated values stay singletons") {
  const ClusteredSpectrum s = cluster_eigenvalues({1.0, 2.0, 3.0}, 1e-8);
  REQUIRE(s.clusters.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(s.clusters[static_cast<std::size_t>(i)].multiplicity == 1);
    CHECK(s.clusters[static_cast<std::size_t>(i)].value == 1.0 + i);
  }
}

TEST_CASE("threshold scales with the spectral range") {
  // the 4e-9 gap is below 1e-8 * range(=5), so the first two values merge
  const ClusteredSpectrum s = cluster_eigenvalues({0.0, 4e-9, 5.0}, 1e-8);
  REQUIRE(s.clusters.size() == 2);
  CHECK(s.clusters[0].value == doctest::Approx(2e-9));
  CHECK(s.clusters[0].multiplicity == 2);
  CHECK(s.clusters[1].value == 5.0);
  CHECK(s.spectral_scale == 5.0);
}

TEST_CASE("clustering covers every input value") {
  for (Seed seed : {31ULL, 32ULL, 33ULL}) {
    Rng rng(seed);
    std::vector<double> values;
    for (int k = 0; k < 9; ++k) values.push_back(rng.gaussian());
    std::sort(values.begin(), values.end());
    const ClusteredSpectrum s = cluster_eigenvalues(values, 1e-8);
    int total = 0;
    for (const EigenvalueCluster& c : s.clusters) total += c.multiplicity;
    CHECK(total == 9);
  }
}

TEST_CASE("clustering is scale and shift equivariant") {
  const std::vector<double> base = {0.0, 1e-10, 0.5, 0.5 + 2e-9, 3.0};
  const ClusteredSpectrum s0 = cluster_eigenvalues(base, 1e-8);
  for (const auto& [c, b] : std::vector<std::pair<double, double>>{
           {2.0, 0.0}, {0.001, 5.0}, {1000.0, -7.0}}) {
    std::vector<double> mapped;
    for (double v : base) mapped.push_back(c * v + b);
    const ClusteredSpectrum s1 = cluster_eigenvalues(mapped, 1e-8);
    REQUIRE(s1.clusters.size() == s0.clusters.size());
    for (std::size_t i = 0; i < s0.clusters.size(); ++i)
      CHECK(s1.clusters[i].member_indices == s0.clusters[i].member_indices);
  }
}

TEST_CASE("gap margin reports the tightest separation") {
  const ClusteredSpectrum s = cluster_eigenvalues({0.0, 1.0, 10.0}, 1e-8);
  CHECK(s.spectral_scale == 10.0);
  CHECK(s.gap_margin == doctest::Approx(1.0 / (1e-8 * 10.0)));
  const ClusteredSpectrum single = cluster_eigenvalues({2.0, 2.0}, 1e-8);
  CHECK(std::isinf(single.gap_margin));
}

TEST_CASE("clustering input validation") {
  CHECK_THROWS_AS(cluster_eigenvalues({2.0, 1.0}, 1e-8), Error);
  CHECK_THROWS_AS(cluster_eigenvalues({1.0}, 0.0), Error);
  CHECK_THROWS_AS(cluster_eigenvalues({std::nan("")}, 1e-8), NonFinite);
}

TEST_CASE("characteristic polynomial evaluation") {
  const ClusteredSpectrum s = cluster_eigenvalues({0.0, 0.0, 2.0}, 1e-8);
  CHECK(char_poly_eval(s, 1.0) == doctest::Approx(-1.0));
  CHECK(char_poly_eval(s, 0.0) == 0.0);
  CHECK(char_poly_eval(s, 2.0) == 0.0);

  // strictly above the spectrum: positive; below: sign (-1)^n
  CHECK(char_poly_eval(s, 3.0) > 0.0);
  CHECK(char_poly_eval(s, -1.0) < 0.0);  // n = 3 odd
}

TEST_CASE("characteristic polynomial matches the naive product") {
  Rng rng(44);
  std::vector<double> values;
  for (int k = 0; k < 5; ++k) values.push_back(rng.gaussian());
  std::sort(values.begin(), values.end());
  const ClusteredSpectrum s = cluster_eigenvalues(values, 1e-8);
  const double x = 0.37;
  double naive = 1.0;
  for (double v : values) naive *= (x - v);
  CHECK(char_poly_eval(s, x) == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("gap products over distinct values") {
  const ClusteredSpectrum s1 = cluster_eigenvalues({0.0, 0.0, 2.0}, 1e-8);
  CHECK(gap_product(s1, 1).value() == doctest::Approx(-2.0));

  const ClusteredSpectrum single = cluster_eigenvalues({0.0}, 1e-8);
  CHECK(gap_product(single, 1).value() == 1.0);

  const ClusteredSpectrum s2 = cluster_eigenvalues({-1.0, 0.0, 0.0, 3.0}, 1e-8);
  CHECK(gap_product(s2, 2).value() == doctest::Approx(-3.0));

  CHECK_THROWS_AS(gap_product(s1, 0), IndexOutOfRange);
  CHECK_THROWS_AS(gap_product(s1, 3), IndexOutOfRange);
}

TEST_CASE("gap product sign counts the clusters above") {
  Rng rng(91);
  std::vector<double> values;
  for (int k = 0; k < 6; ++k) values.push_back(3.0 * rng.gaussian());
  std::sort(values.begin(), values.end());
  const ClusteredSpectrum s = cluster_eigenvalues(values, 1e-8);
  for (int i = 1; i <= static_cast<int>(s.clusters.size()); ++i) {
    int mult_above = 0;
    for (std::size_t j = static_cast<std::size_t>(i); j < s.clusters.size(); ++j)
      mult_above += s.clusters[j].multiplicity;
    const int want = (mult_above % 2 == 0) ? 1 : -1;
    CHECK(gap_product(s, i).sign() == want);
  }
}
