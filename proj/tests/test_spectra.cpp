#include <catch_amalgamated.hpp>

#include <random>

#include "fuglede/constructions.hpp"
#include "fuglede/spectra.hpp"
#include "oracles.hpp"

using namespace fuglede;

namespace {

std::vector<std::size_t> oracle_indices(const oracle::Group& og, const ElementSet& s) {
  std::vector<std::size_t> out;
  for (const auto& x : s) out.push_back(og.index(x.coords));
  return out;
}

}  // namespace

TEST_CASE("fourier zero set of small sets") {
  const GroupSpec z4({4});
  CHECK(fourier_zero_set(z4, {{0}, {1}}) == ElementSet{{2}});
  CHECK(fourier_zero_set(z4, {{0}, {2}}) == ElementSet{{1}, {3}});
  CHECK(fourier_zero_set(z4, {{0}}).empty());
  CHECK(fourier_zero_set(z4, all_elements(z4)) == ElementSet{{1}, {2}, {3}});
  CHECK_THROWS(fourier_zero_set(z4, {}));
}

TEST_CASE("fourier zero set is closed under negation and translation") {
  std::mt19937_64 rng(3);
  for (const auto& moduli : std::vector<std::vector<int>>{{12}, {3, 3}, {2, 2, 4}, {5, 6}}) {
    const GroupSpec g(moduli);
    const auto all = all_elements(g);
    for (int trial = 0; trial < 10; ++trial) {
      ElementSet t = all;
      std::shuffle(t.begin(), t.end(), rng);
      t.resize(1 + rng() % std::min<std::size_t>(6, all.size()));
      const ElementSet z = fourier_zero_set(g, t);
      ElementSet neg;
      for (const auto& d : z) neg.push_back(g.neg(d));
      CHECK(normalized(neg) == z);
      const GroupElement a = all[rng() % all.size()];
      CHECK(fourier_zero_set(g, translate(g, t, a)) == z);
    }
  }
}

TEST_CASE("fourier zero set agrees with the oracle") {
  const GroupSpec g({4, 6});
  const oracle::Group og{{4, 6}};
  const ElementSet t{{0, 0}, {0, 3}, {2, 0}, {2, 3}, {1, 1}};
  const auto mask = oracle::zero_mask(og, oracle_indices(og, t));
  const auto z = fourier_zero_ranks(g, t);
  std::vector<bool> mine(g.order(), false);
  for (Rank r : z) mine[r] = true;
  CHECK(mine == mask);
}

TEST_CASE("is_spectrum") {
  const GroupSpec z6({6});
  SECTION("valid pair") {
    const auto r = is_spectrum(z6, {{0}, {3}}, {{0}, {1}});
    CHECK(r.valid);
    CHECK_FALSE(r.witness);
  }
  SECTION("first failing pair is the witness") {
    const auto r = is_spectrum(z6, {{0}, {3}}, {{0}, {2}});
    CHECK_FALSE(r.valid);
    REQUIRE(r.witness);
    CHECK(r.witness->first == GroupElement{0});
    CHECK(r.witness->second == GroupElement{2});
  }
  SECTION("size mismatch") {
    const auto r = is_spectrum(z6, {{0}, {3}}, {{0}});
    CHECK_FALSE(r.valid);
    CHECK(r.cardinality_mismatch);
  }
  SECTION("bad input") {
    CHECK_THROWS(is_spectrum(z6, {{0}, {0}}, {{0}, {1}}));
    CHECK_THROWS(is_spectrum(z6, {{0}, {7}}, {{0}, {1}}));
    CHECK_THROWS(is_spectrum(z6, {}, {}));
  }
  SECTION("repeated frequencies are never orthogonal") {
    CHECK_FALSE(is_spectrum(z6, {{0}, {3}}, {{1}, {1}}).valid);
  }
}

TEST_CASE("spectra are invariant under translating the set or the spectrum") {
  const auto pair = z3_5_pair();
  const GroupSpec& g = pair.group;
  REQUIRE(is_spectrum(g, pair.set, pair.spectrum).valid);
  const GroupElement a{1, 2, 0, 1, 1};
  CHECK(is_spectrum(g, translate(g, pair.set, a), pair.spectrum).valid);
  CHECK(is_spectrum(g, pair.set, translate(g, pair.spectrum, a)).valid);
}

TEST_CASE("find_spectrum returns a verified spectrum containing 0") {
  const auto pair = z3_5_pair();
  const auto r = find_spectrum(pair.group, pair.set);
  REQUIRE(r.spectral());
  CHECK(r.spectrum.size() == 6);
  CHECK(r.spectrum.front() == pair.group.zero());
  CHECK(std::is_sorted(r.spectrum.begin(), r.spectrum.end(),
                       [&](const auto& a, const auto& b) { return pair.group.rank(a) < pair.group.rank(b); }));
  CHECK(is_spectrum(pair.group, pair.set, r.spectrum).valid);
}

TEST_CASE("find_spectrum edge cases") {
  const GroupSpec z6({6});
  CHECK(find_spectrum(z6, {{4}}).spectrum == ElementSet{{0}});
  CHECK(find_spectrum(z6, all_elements(z6)).spectral());
  // {0,1,3} in Z_6 has an empty zero set
  CHECK(fourier_zero_set(z6, {{0}, {1}, {3}}).empty());
  const auto r = find_spectrum(z6, {{0}, {1}, {3}});
  CHECK_FALSE(r.spectral());
  CHECK(r.spectrum.empty());
  CHECK_THROWS(find_spectrum(z6, {}));
}

TEST_CASE("find_spectrum honours the node budget") {
  const auto pair = z2_12_pair();
  SearchOptions tight;
  tight.node_budget = 1;
  CHECK_THROWS_AS(find_spectrum(pair.group, pair.set, tight), BudgetExceeded);
  CHECK(find_spectrum(pair.group, pair.set).spectral());
}

TEST_CASE("find_spectrum agrees with the brute-force oracle") {
  std::mt19937_64 rng(99);
  int spectral = 0, total = 0;
  for (const auto& moduli : std::vector<std::vector<int>>{{8}, {9}, {10}, {12}, {2, 6}, {3, 3}, {2, 2, 2}, {4, 4}}) {
    const GroupSpec g(moduli);
    const oracle::Group og{moduli};
    const auto all = all_elements(g);
    for (int trial = 0; trial < 25; ++trial) {
      ElementSet t = all;
      std::shuffle(t.begin(), t.end(), rng);
      t.resize(1 + rng() % 6);
      const bool expected = oracle::is_spectral(og, oracle_indices(og, t));
      const auto r = find_spectrum(g, t);
      CHECK(r.spectral() == expected);
      if (r.spectral()) CHECK(is_spectrum(g, t, r.spectrum).valid);
      spectral += expected;
      ++total;
    }
  }
  // the sample has both kinds of sets
  CHECK(spectral > 0);
  CHECK(spectral < total);
}
