#pragma once

// Spectra of subsets of finite abelian groups.
//
// L is a spectrum of T when #L = #T and every difference of two distinct
// elements of L lies in the Fourier zero set Z(T). Searching for a spectrum
// is a clique search in the Cayley graph Cay(G, Z(T)); since spectra are
// translation invariant the clique may be assumed to contain 0.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"

namespace fuglede {

struct SearchOptions {
  std::uint64_t node_budget = 200'000'000;
};

namespace detail {

inline void require_nonempty(const ElementSet& s, const char* what) {
  if (s.empty()) throw std::invalid_argument(std::string(what) + " must be nonempty");
}

// Bit mask over element ranks.
class RankMask {
public:
  explicit RankMask(std::uint64_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(Rank r) { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }
  bool test(Rank r) const { return (words_[r >> 6] >> (r & 63)) & 1U; }

private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

/// Ranks of the nonzero d with sum_{x in T} omega^{d.x} = 0, ascending.
inline std::vector<Rank> fourier_zero_ranks(const GroupSpec& g, const ElementSet& t) {
  detail::require_nonempty(t, "set");
  g.require_exhaustive();
  g.require(t);
  const int m = g.exponent();
  const std::size_t dim = g.dimension();
  std::vector<int> scale(dim);
  for (std::size_t j = 0; j < dim; ++j) scale[j] = m / g.modulus(j);

  std::vector<Rank> out;
  CyclotomicInt acc(m);
  for (std::uint64_t r = 1; r < g.order(); ++r) {
    const GroupElement d = g.unrank(static_cast<Rank>(r));
    acc = CyclotomicInt(m);
    for (const auto& x : t) {
      long long e = 0;
      for (std::size_t j = 0; j < dim; ++j) e += static_cast<long long>(d[j]) * x[j] * scale[j];
      acc.add_root(e);
    }
    if (acc.is_zero()) out.push_back(static_cast<Rank>(r));
  }
  return out;
}

inline ElementSet fourier_zero_set(const GroupSpec& g, const ElementSet& t) {
  return g.unrank_all(fourier_zero_ranks(g, t));
}

/// Outcome of checking a proposed spectrum.
struct SpectrumCheck {
  bool valid = false;
  bool cardinality_mismatch = false;
  /// First pair (in input order) whose exponentials are not orthogonal.
  std::optional<std::pair<GroupElement, GroupElement>> witness;

  explicit operator bool() const { return valid; }
};

inline SpectrumCheck is_spectrum(const GroupSpec& g, const ElementSet& t, const ElementSet& l) {
  detail::require_nonempty(t, "set");
  detail::require_nonempty(l, "spectrum");
  g.require(t);
  g.require(l);
  if (has_duplicates(t)) throw std::invalid_argument("set has repeated elements");
  SpectrumCheck out;
  if (l.size() != t.size()) {
    out.cardinality_mismatch = true;
    return out;
  }
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = a + 1; b < l.size(); ++b)
      if (!character_sum(g, t, g.sub(l[a], l[b])).is_zero()) {
        out.witness = std::make_pair(l[a], l[b]);
        return out;
      }
  out.valid = true;
  return out;
}

enum class SpectrumVerdict { Spectral, NotSpectral };

struct SpectrumResult {
  SpectrumVerdict verdict = SpectrumVerdict::NotSpectral;
  ElementSet spectrum;  // ascending rank order, contains 0
  std::uint64_t nodes = 0;

  bool spectral() const { return verdict == SpectrumVerdict::Spectral; }
};

namespace detail {

// Branch and bound for a k-clique in Cay(G, Z) restricted to Z itself.
class CliqueSearch {
public:
  CliqueSearch(const GroupSpec& g, std::vector<Rank> zero_set, const SearchOptions& opt)
      : g_(g), mask_(g.order()), budget_(opt.node_budget) {
    for (Rank r : zero_set) mask_.set(r);
    order_vertices(std::move(zero_set));
  }

  bool find(std::size_t k) {
    clique_.clear();
    if (k == 0) return true;
    return expand(vertices_, k);
  }

  const std::vector<Rank>& clique() const { return clique_; }
  std::uint64_t nodes() const { return nodes_; }

private:
  static constexpr std::size_t kDegreeOrderingLimit = 1U << 13;

  bool adjacent(Rank a, Rank b) const { return mask_.test(g_.sub_rank(a, b)); }

  // Descending degree inside Z, ties by rank. Large zero sets fall back to
  // plain rank order since the quadratic degree pass dominates.
  void order_vertices(std::vector<Rank> z) {
    if (z.size() <= kDegreeOrderingLimit) {
      std::vector<std::pair<std::size_t, Rank>> keyed;
      keyed.reserve(z.size());
      for (Rank v : z) {
        std::size_t deg = 0;
        for (Rank u : z)
          if (u != v && adjacent(u, v)) ++deg;
        keyed.emplace_back(deg, v);
      }
      std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      z.clear();
      for (const auto& [deg, v] : keyed) z.push_back(v);
    }
    vertices_ = std::move(z);
  }

  bool expand(const std::vector<Rank>& candidates, std::size_t need) {
    if (++nodes_ > budget_) throw BudgetExceeded("spectrum search exceeded node budget");
    if (need == 0) return true;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates.size() - i < need) return false;
      const Rank v = candidates[i];
      std::vector<Rank> next;
      next.reserve(candidates.size() - i - 1);
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (adjacent(candidates[j], v)) next.push_back(candidates[j]);
      if (next.size() + 1 < need) continue;
      clique_.push_back(v);
      if (expand(next, need - 1)) return true;
      clique_.pop_back();
    }
    return false;
  }

  const GroupSpec& g_;
  RankMask mask_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Rank> vertices_;
  std::vector<Rank> clique_;
};

}  // namespace detail

inline constexpr std::size_t kMaxSpectrumSearchSize = 64;

/// Clique search for a spectrum containing 0. Throws BudgetExceeded when the
/// node budget runs out before the search completes.
inline SpectrumResult find_spectrum(const GroupSpec& g, const ElementSet& t, const SearchOptions& opt = {}) {
  detail::require_nonempty(t, "set");
  g.require_exhaustive();
  g.require(t);
  const ElementSet set = normalized(t);
  if (set.size() > kMaxSpectrumSearchSize)
    throw std::invalid_argument("spectrum search supports sets of at most 64 elements");

  SpectrumResult out;
  if (set.size() == 1) {
    out.verdict = SpectrumVerdict::Spectral;
    out.spectrum = {g.zero()};
    return out;
  }
  auto zeros = fourier_zero_ranks(g, set);
  if (zeros.size() + 1 < set.size()) return out;

  detail::CliqueSearch search(g, std::move(zeros), opt);
  const bool found = search.find(set.size() - 1);
  out.nodes = search.nodes();
  if (!found) return out;
  std::vector<Rank> ranks = search.clique();
  ranks.push_back(0);
  std::sort(ranks.begin(), ranks.end());
  out.verdict = SpectrumVerdict::Spectral;
  out.spectrum = g.unrank_all(ranks);
  return out;
}

}  // namespace fuglede
