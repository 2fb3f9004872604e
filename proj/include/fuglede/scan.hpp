#pragma once

// Exhaustive comparison of spectral and tiling status over subsets of a
// small group, one representative per translation class.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fuglede/group.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/tiling.hpp"

namespace fuglede {

inline constexpr std::uint64_t kMaxScanOrder = std::uint64_t{1} << 14;

struct ScanOptions {
  std::optional<std::size_t> size_filter;
  /// Subsets visited (canonical or not) before the scan gives up.
  std::uint64_t subset_budget = std::uint64_t{1} << 26;
  SearchOptions search;
};

struct ScanRecord {
  ElementSet set;
  SpectrumResult spectrum;
  TilingResult tiling;

  bool spectral() const { return spectrum.spectral(); }
  bool tiles() const { return tiling.tiles(); }
};

struct ScanReport {
  GroupSpec group;
  std::uint64_t classes = 0;
  std::vector<ElementSet> spectral_non_tiles;
  std::vector<ElementSet> tiles_non_spectral;
  bool complete = true;
  std::string incomplete_reason;

  std::size_t counterexamples() const { return spectral_non_tiles.size() + tiles_non_spectral.size(); }
};

/// Ranks of the translation-class representative: among the translates of
/// the set that contain 0, the lexicographically least sorted rank vector.
inline std::vector<Rank> canonical_translate(const GroupSpec& g, const std::vector<Rank>& ranks) {
  std::vector<Rank> best, cur(ranks.size());
  for (Rank shift : ranks) {
    for (std::size_t k = 0; k < ranks.size(); ++k) cur[k] = g.sub_rank(ranks[k], shift);
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

inline ElementSet canonical_translate(const GroupSpec& g, const ElementSet& s) {
  return g.unrank_all(canonical_translate(g, g.ranks(normalized(s))));
}

inline ScanRecord classify(const GroupSpec& g, const ElementSet& set, const SearchOptions& opt = {}) {
  ScanRecord rec;
  rec.set = set;
  rec.spectrum = find_spectrum(g, set, opt);
  rec.tiling = find_tiling(g, set, opt);
  return rec;
}

namespace detail {

inline void tally(ScanReport& report, const ScanRecord& rec) {
  ++report.classes;
  if (rec.spectral() && !rec.tiles()) report.spectral_non_tiles.push_back(rec.set);
  if (rec.tiles() && !rec.spectral()) report.tiles_non_spectral.push_back(rec.set);
}

}  // namespace detail

/// Classifies every translation class of nonempty subsets (optionally of one
/// size), calling `sink` per class in enumeration order: by size, then by
/// lexicographic rank vector.
inline ScanReport fuglede_scan(const GroupSpec& g, const ScanOptions& opt = {},
                               const std::function<void(const ScanRecord&)>& sink = {}) {
  g.require_exhaustive(kMaxScanOrder);
  ScanReport report;
  report.group = g;
  const std::size_t n = g.order();
  std::size_t lo = 1, hi = n;
  if (opt.size_filter) {
    if (*opt.size_filter < 1 || *opt.size_filter > n) throw std::invalid_argument("size filter outside 1..order");
    lo = hi = *opt.size_filter;
  }
  std::uint64_t visited = 0;
  try {
    for (std::size_t k = lo; k <= hi; ++k) {
      // Subsets containing 0: choose k-1 of the ranks 1..n-1 in lexicographic order.
      std::vector<Rank> ranks(k);
      for (std::size_t i = 0; i < k; ++i) ranks[i] = static_cast<Rank>(i);
      while (true) {
        if (++visited > opt.subset_budget) throw BudgetExceeded("scan exceeded subset budget");
        if (canonical_translate(g, ranks) == ranks) {
          const ScanRecord rec = classify(g, g.unrank_all(ranks), opt.search);
          detail::tally(report, rec);
          if (sink) sink(rec);
        }
        // next combination of positions 1..k-1
        std::size_t i = k;
        while (i > 1 && ranks[i - 1] == n - k + i - 1) --i;
        if (i <= 1) break;
        ++ranks[i - 1];
        for (std::size_t j = i; j < k; ++j) ranks[j] = ranks[j - 1] + 1;
      }
    }
  } catch (const BudgetExceeded& e) {
    report.complete = false;
    report.incomplete_reason = e.what();
  }
  return report;
}

/// Scan restricted to the translation classes of the given sets.
inline ScanReport fuglede_scan_classes(const GroupSpec& g, const std::vector<ElementSet>& sets,
                                       const SearchOptions& opt = {},
                                       const std::function<void(const ScanRecord&)>& sink = {}) {
  ScanReport report;
  report.group = g;
  std::vector<ElementSet> seen;
  try {
    for (const auto& s : sets) {
      g.require(s);
      ElementSet canon = canonical_translate(g, s);
      if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
      seen.push_back(canon);
      const ScanRecord rec = classify(g, canon, opt);
      detail::tally(report, rec);
      if (sink) sink(rec);
    }
  } catch (const BudgetExceeded& e) {
    report.complete = false;
    report.incomplete_reason = e.what();
  }
  return report;
}

}  // namespace fuglede
