#pragma once

// Translational tiling of finite abelian groups: T tiles G when some
// complement S makes {s + T : s in S} a partition of G.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fuglede/exact_cover.hpp"
#include "fuglede/group.hpp"
#include "fuglede/spectra.hpp"

namespace fuglede {

inline constexpr std::uint64_t kMaxTilingOrder = std::uint64_t{1} << 16;

struct DivisibilityObstruction {
  std::uint64_t set_size = 0;
  std::uint64_t group_order = 0;

  friend bool operator==(const DivisibilityObstruction&, const DivisibilityObstruction&) = default;
};

/// The cover search ran to completion without finding a tiling.
struct ExhaustedCover {
  friend bool operator==(const ExhaustedCover&, const ExhaustedCover&) = default;
};

struct TilingResult {
  std::optional<ElementSet> complement;  // engaged iff the set tiles
  std::variant<std::monostate, DivisibilityObstruction, ExhaustedCover> certificate;
  std::uint64_t nodes = 0;

  bool tiles() const { return complement.has_value(); }
  const DivisibilityObstruction* obstruction() const { return std::get_if<DivisibilityObstruction>(&certificate); }
  bool exhausted() const { return std::holds_alternative<ExhaustedCover>(certificate); }
};

inline std::optional<DivisibilityObstruction> divisibility_check(std::uint64_t set_size, std::uint64_t group_order) {
  if (set_size == 0) throw std::invalid_argument("set must be nonempty");
  if (group_order % set_size == 0) return std::nullopt;
  return DivisibilityObstruction{set_size, group_order};
}

inline std::optional<DivisibilityObstruction> divisibility_check(const ElementSet& t, const GroupSpec& g) {
  return divisibility_check(normalized(t).size(), g.order());
}

/// Element covered a number of times other than once, if any.
struct CoverDefect {
  GroupElement element;
  std::uint64_t times = 0;
};

inline std::optional<CoverDefect> find_cover_defect(const GroupSpec& g, const ElementSet& t, const ElementSet& sigma) {
  g.require_exhaustive();
  g.require(t);
  g.require(sigma);
  std::vector<std::uint64_t> hits(g.order(), 0);
  for (const auto& s : sigma)
    for (const auto& x : t) ++hits[g.rank(g.add(s, x))];
  for (std::uint64_t r = 0; r < hits.size(); ++r)
    if (hits[r] != 1) return CoverDefect{g.unrank(static_cast<Rank>(r)), hits[r]};
  return std::nullopt;
}

inline bool verify_tiling(const GroupSpec& g, const ElementSet& t, const ElementSet& sigma) {
  return !find_cover_defect(g, t, sigma).has_value();
}

/// Exact-cover search for a tiling complement containing 0. Throws
/// BudgetExceeded when the node budget runs out.
inline TilingResult find_tiling(const GroupSpec& g, const ElementSet& t, const SearchOptions& opt = {}) {
  detail::require_nonempty(t, "set");
  g.require(t);
  const ElementSet set = normalized(t);
  TilingResult out;
  if (auto obstruction = divisibility_check(set.size(), g.order())) {
    out.certificate = *obstruction;
    return out;
  }
  g.require_exhaustive(kMaxTilingOrder);

  const auto base = g.ranks(set);
  ExactCover cover(g.order());
  std::vector<std::size_t> cols(base.size());
  for (std::uint64_t s = 0; s < g.order(); ++s) {
    for (std::size_t k = 0; k < base.size(); ++k) cols[k] = g.add_rank(static_cast<Rank>(s), base[k]);
    cover.add_row(cols);  // row id == rank of the translation
  }
  cover.preselect(0);
  const auto rows = cover.solve(opt.node_budget);
  out.nodes = cover.nodes_visited();
  if (!rows) {
    out.certificate = ExhaustedCover{};
    return out;
  }
  ElementSet sigma;
  for (std::size_t r : *rows) sigma.push_back(g.unrank(static_cast<Rank>(r)));
  out.complement = std::move(sigma);
  return out;
}

}  // namespace fuglede
