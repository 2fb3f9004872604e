#include <catch_amalgamated.hpp>

#include <random>

#include "fuglede/constructions.hpp"
#include "fuglede/exact_cover.hpp"
#include "fuglede/scan.hpp"
#include "fuglede/tiling.hpp"
#include "oracles.hpp"

using namespace fuglede;

TEST_CASE("exact cover on a small instance") {
  // Knuth's example: rows 0,3,4 are the unique cover.
  ExactCover dlx(7);
  dlx.add_row({2, 4, 5});
  dlx.add_row({0, 3, 6});
  dlx.add_row({1, 2, 5});
  dlx.add_row({0, 3});
  dlx.add_row({1, 6});
  dlx.add_row({3, 4, 6});
  const auto sol = dlx.solve(1000);
  REQUIRE(sol);
  CHECK(*sol == std::vector<std::size_t>{0, 3, 4});
}

TEST_CASE("exact cover: preselection, infeasibility, budget") {
  ExactCover a(2);
  a.add_row({0});
  a.add_row({0, 1});
  a.preselect(0);
  CHECK_FALSE(a.solve(100));

  ExactCover b(4);
  for (std::size_t i = 0; i < 4; ++i) b.add_row({i});
  CHECK_THROWS_AS(b.solve(1), BudgetExceeded);
  CHECK_THROWS(b.add_row({4}));
}

TEST_CASE("divisibility obstruction") {
  CHECK_FALSE(divisibility_check(4, 8));
  const auto d = divisibility_check(12, 4096);
  REQUIRE(d);
  CHECK(d->set_size == 12);
  CHECK(d->group_order == 4096);
  CHECK(divisibility_check({{0}, {1}, {2}}, GroupSpec({8})).has_value());
}

TEST_CASE("verify_tiling and cover defects") {
  const GroupSpec z6({6});
  CHECK(verify_tiling(z6, {{0}, {1}}, {{0}, {2}, {4}}));
  CHECK_FALSE(verify_tiling(z6, {{0}, {1}}, {{0}, {1}}));
  const auto defect = find_cover_defect(z6, {{0}, {1}}, {{0}, {1}});
  REQUIRE(defect);
  CHECK(defect->element == GroupElement{1});
  CHECK(defect->times == 2);
  const auto gap = find_cover_defect(z6, {{0}, {1}}, {{0}});
  REQUIRE(gap);
  CHECK(gap->element == GroupElement{2});
  CHECK(gap->times == 0);
}

TEST_CASE("find_tiling returns a verified complement containing 0") {
  const GroupSpec g({4, 4});
  const ElementSet t{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const auto r = find_tiling(g, t);
  REQUIRE(r.tiles());
  CHECK(std::holds_alternative<std::monostate>(r.certificate));
  CHECK(std::find(r.complement->begin(), r.complement->end(), g.zero()) != r.complement->end());
  CHECK(verify_tiling(g, t, *r.complement));
}

TEST_CASE("find_tiling certificates") {
  SECTION("divisibility") {
    const auto r = find_tiling(GroupSpec({8}), {{0}, {1}, {2}});
    CHECK_FALSE(r.tiles());
    REQUIRE(r.obstruction());
    CHECK(*r.obstruction() == DivisibilityObstruction{3, 8});
  }
  SECTION("exhausted search") {
    // 4 divides 8, but no translate of {0,1,2,4} is disjoint from it
    const auto r = find_tiling(GroupSpec({8}), {{0}, {1}, {2}, {4}});
    CHECK_FALSE(r.tiles());
    CHECK(r.exhausted());
  }
  SECTION("budget") {
    SearchOptions tight;
    tight.node_budget = 1;
    CHECK_THROWS_AS(find_tiling(GroupSpec({12}), {{0}, {1}, {5}}, tight), BudgetExceeded);
  }
}

TEST_CASE("find_tiling agrees with the brute-force oracle") {
  std::mt19937_64 rng(5);
  int tiles = 0, total = 0;
  for (const auto& moduli : std::vector<std::vector<int>>{{8}, {12}, {2, 6}, {4, 4}, {2, 2, 2}, {3, 6}}) {
    const GroupSpec g(moduli);
    const oracle::Group og{moduli};
    const auto all = all_elements(g);
    for (int trial = 0; trial < 30; ++trial) {
      ElementSet t = all;
      std::shuffle(t.begin(), t.end(), rng);
      t.resize(1 + rng() % 4);
      std::vector<std::size_t> ot;
      for (const auto& x : t) ot.push_back(og.index(x.coords));
      const bool expected = oracle::tiles(og, ot);
      const auto r = find_tiling(g, t);
      CHECK(r.tiles() == expected);
      if (r.tiles()) CHECK(verify_tiling(g, t, *r.complement));
      tiles += expected;
      ++total;
    }
  }
  CHECK(tiles > 0);
  CHECK(tiles < total);
}

TEST_CASE("canonical translate picks the least class representative") {
  const GroupSpec z6({6});
  CHECK(canonical_translate(z6, ElementSet{{2}, {5}}) == ElementSet{{0}, {3}});
  CHECK(canonical_translate(z6, ElementSet{{1}, {2}, {4}}) == ElementSet{{0}, {1}, {3}});
  const GroupSpec g({3, 3});
  const ElementSet s{{1, 1}, {2, 0}};
  for (const auto& a : all_elements(g))
    CHECK(canonical_translate(g, translate(g, s, a)) == canonical_translate(g, s));
}

TEST_CASE("scan of Z_6 counts translation classes") {
  // Burnside count of translation classes by size: 1 + 3 + 4 + 3 + 1 + 1.
  const auto report = fuglede_scan(GroupSpec({6}));
  CHECK(report.complete);
  CHECK(report.classes == 13);
  CHECK(report.counterexamples() == 0);
}

TEST_CASE("scan filters and budgets") {
  ScanOptions opt;
  opt.size_filter = 2;
  std::vector<ElementSet> seen;
  const auto report = fuglede_scan(GroupSpec({2, 2}), opt, [&](const ScanRecord& r) { seen.push_back(r.set); });
  CHECK(report.classes == 3);
  CHECK(seen.size() == 3);
  for (const auto& s : seen) CHECK(s.size() == 2);

  ScanOptions tiny;
  tiny.subset_budget = 3;
  const auto partial = fuglede_scan(GroupSpec({12}), tiny);
  CHECK_FALSE(partial.complete);
  CHECK_FALSE(partial.incomplete_reason.empty());

  CHECK_THROWS(fuglede_scan(GroupSpec::power(2, 15)));
}

TEST_CASE("scan restricted to the Z_3^5 class finds the counterexample") {
  const auto pair = z3_5_pair();
  const auto report = fuglede_scan_classes(pair.group, {pair.set, translate(pair.group, pair.set, {1, 1, 0, 0, 2})});
  CHECK(report.classes == 1);
  REQUIRE(report.spectral_non_tiles.size() == 1);
  CHECK(report.spectral_non_tiles.front() == canonical_translate(pair.group, pair.set));
}
