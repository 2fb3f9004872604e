#include <catch_amalgamated.hpp>

#include <random>

#include "fuglede/constructions.hpp"
#include "fuglede/continuum.hpp"

using namespace fuglede;

namespace {

LatticeConfig config(long long m) {
  LatticeConfig cfg;
  cfg.m = m;
  return cfg;
}

// Integral of exp(2 pi i eta . x) over the union of unit cubes, in double:
// prod_j c(eta_j) * sum over corners, c(t) = (e^{2 pi i t} - 1) / (2 pi i t).
std::complex<double> float_integral(const LatticeSet& corners, const RationalVector& eta) {
  const std::complex<double> i2pi(0, 2 * std::numbers::pi);
  std::complex<double> factor = 1;
  for (long long v : eta.numerators) {
    const double t = static_cast<double>(v) / static_cast<double>(eta.denominator);
    if (v != 0) factor *= (std::exp(i2pi * t) - 1.0) / (i2pi * t);
  }
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    double phase = 0;
    for (std::size_t j = 0; j < eta.numerators.size(); ++j)
      phase += static_cast<double>(eta.numerators[j]) / static_cast<double>(eta.denominator) * corners.point(i)[j];
    s += std::polar(1.0, 2 * std::numbers::pi * phase);
  }
  return factor * s;
}

RationalVector eta(std::vector<long long> num, long long den) { return {std::move(num), den}; }

}  // namespace

TEST_CASE("cube union") {
  const auto p = lattice_pair(config(2));
  const CubeUnion omega2 = build_omega2(p.omega1);
  CHECK(omega2.measure() == 192);
  CHECK(omega2.dimension() == 5);
  CHECK_THROWS(build_omega2(LatticeSet(5)));
  LatticeSet dup(1);
  dup.push_back(std::vector<int>{0});
  dup.push_back(std::vector<int>{0});
  CHECK_THROWS(build_omega2(dup));
}

TEST_CASE("inner products on the cube union") {
  const auto p = lattice_pair(config(2));
  SECTION("a nonzero integer coordinate kills the cube factor") {
    CHECK(inner_product_is_zero(p.omega1, eta({6, 0, 0, 0, 0}, 6)));
    CHECK(inner_product_is_zero(p.omega1, eta({-12, 1, 2, 3, 4}, 6)));
  }
  SECTION("the lattice factor alone can vanish") {
    // 1/6 is not 0 mod 1/M = 1/2, so the geometric factor is zero
    CHECK(inner_product_is_zero(p.omega1, eta({1, 0, 0, 0, 0}, 6)));
  }
  SECTION("a frequency that does not vanish") {
    // every delta_j = 0 mod 2; base sum 1 + 5 w3 != 0
    CHECK_FALSE(inner_product_is_zero(p.omega1, eta({2, 2, 2, 2, 2}, 6)));
    CHECK(std::abs(float_integral(p.omega1, eta({2, 2, 2, 2, 2}, 6))) > 1.0);
  }
  SECTION("zero frequency and mismatched denominators are rejected") {
    CHECK_THROWS(inner_product_is_zero(p.omega1, eta({0, 0, 0, 0, 0}, 6)));
    CHECK_THROWS(inner_product_is_zero(p.omega1, eta({1, 0, 0, 0, 0}, 0)));
    CHECK_THROWS(inner_product_is_zero(p.omega1, eta({1, 0, 0}, 6)));
  }
}

TEST_CASE("inner product verdicts agree with the floating point integral") {
  const auto p = lattice_pair(config(2));
  std::mt19937_64 rng(53);
  int zeros = 0, total = 0;
  for (int trial = 0; trial < 400; ++trial) {
    RationalVector e{std::vector<long long>(5), 6};
    for (auto& v : e.numerators) v = static_cast<long long>(rng() % 4 == 0 ? 2 * (rng() % 7) : rng() % 25) - 12;
    if (e.is_zero()) continue;
    const bool exact = inner_product_is_zero(p.omega1, e);
    CHECK(exact == (std::abs(float_integral(p.omega1, e)) < 1e-7));
    // conjugate symmetry: eta and -eta vanish together
    CHECK(exact == inner_product_is_zero(p.omega1, -e));
    zeros += exact;
    ++total;
  }
  CHECK(zeros > 0);
  CHECK(zeros < total);
}

TEST_CASE("frequency differences") {
  const ExtendedFrequency a{{{1, 2}, 6}, {0, -1}};
  const ExtendedFrequency b{{{5, 2}, 6}, {1, 1}};
  const RationalVector d = difference(a, b);
  CHECK(d.denominator == 6);
  CHECK(d.numerators == std::vector<long long>{1 - 5 - 6, -12});
  const ExtendedFrequency c{{{1, 2}, 3}, {0, 0}};
  CHECK_THROWS(difference(a, c));
}

TEST_CASE("truncated spectrum") {
  const auto p = lattice_pair(config(2));
  const auto f0 = truncated_spectrum(p.lambda1, 0);
  CHECK(f0.size() == 192);
  const auto f1 = truncated_spectrum(p.lambda1, 1);
  CHECK(f1.size() == 192 * 243);
  CHECK(f1.front().shift == std::vector<long long>{-1, -1, -1, -1, -1});
  CHECK(f1[1].shift == std::vector<long long>{-1, -1, -1, -1, 0});
  CHECK(f1[243].base == p.lambda1.at(1));
  CHECK_THROWS(truncated_spectrum(p.lambda1, -1));
}

TEST_CASE("truncations of the spectrum are orthogonal") {
  const auto p = lattice_pair(config(2));
  const auto full = verify_spectrum_truncation(p.omega1, p.lambda1, 0);
  CHECK(full.valid);
  CHECK_FALSE(full.sampled);
  CHECK(full.pairs_checked == 18336);

  TruncationOptions opt;
  opt.max_pairs = 50000;
  const auto sampled = verify_spectrum_truncation(p.omega1, p.lambda1, 1, opt);
  CHECK(sampled.valid);
  CHECK(sampled.sampled);
  CHECK(sampled.pairs_checked == 50000);
  CHECK(sampled.frequencies == 46656);

  // same seed, same verdict and count
  const auto again = verify_spectrum_truncation(p.omega1, p.lambda1, 1, opt);
  CHECK(again.pairs_checked == sampled.pairs_checked);
}

TEST_CASE("a foreign frequency is caught") {
  const auto p = lattice_pair(config(2));
  FrequencySet f = p.lambda1;
  f.numerators.push_back({3, 0, 0, 0, 0});
  const auto r = verify_spectrum_truncation(p.omega1, f, 0);
  CHECK_FALSE(r.valid);
  REQUIRE(r.witness);
  CHECK(r.witness->second.base.numerators == std::vector<int>{3, 0, 0, 0, 0});
}
