#pragma once

// Lifting a spectral set of Z_3^n to a finite set of Z^n.
//
//   Omega1 = union over k in [0,M)^n of (3k + base)
//   Lambda1 = union over l in [0,M)^n of (l / 3M + xi0 / 3), xi0 in base spectrum
//
// Base coordinates in {0,1,2} are lifted verbatim; nothing is reduced mod 3
// once on the lattice.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"
#include "fuglede/tiling.hpp"

namespace fuglede {

struct LatticeConfig {
  std::size_t dimension = 5;
  long long m = 2;  // cells per axis
  long long l = 8;  // window side, density checks only
  long long n = 0;  // region scale; carried for completeness, unused

  long long modulus() const { return 3 * m; }

  void validate() const {
    if (dimension < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    if (m < 1) throw std::invalid_argument("M must be >= 1");
  }

  void validate_density() const {
    validate();
    if (l < 3) throw std::invalid_argument("window side L must be >= 3");
    if (l > 3 * m) throw std::invalid_argument("window side L must not exceed the support side 3M");
  }
};

/// Finite set of integer points, stored flat.
class LatticeSet {
public:
  explicit LatticeSet(std::size_t dimension = 0) : dim_(dimension) {}

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const int> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }

  void reserve(std::size_t count) { coords_.reserve(count * dim_); }

  void push_back(std::span<const int> p) {
    if (p.size() != dim_) throw std::invalid_argument("lattice point has wrong dimension");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }

  /// Copy with points in lexicographic order and duplicates removed.
  LatticeSet sorted() const {
    std::vector<std::size_t> idx(size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
      auto pa = point(a), pb = point(b);
      return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(idx.begin(), idx.end(), less);
    LatticeSet out(dim_);
    out.reserve(size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0 && !less(idx[k - 1], idx[k])) continue;
      out.push_back(point(idx[k]));
    }
    return out;
  }

  bool has_duplicates() const { return sorted().size() != size(); }

  LatticeSet without(std::size_t i) const {
    LatticeSet out(dim_);
    for (std::size_t k = 0; k < size(); ++k)
      if (k != i) out.push_back(point(k));
    return out;
  }

  friend bool operator==(const LatticeSet& a, const LatticeSet& b) {
    return a.dim_ == b.dim_ && a.coords_ == b.coords_;
  }

private:
  std::size_t dim_;
  std::vector<int> coords_;
};

/// numerators / denominator, componentwise mod 1.
struct FrequencyVector {
  std::vector<int> numerators;
  int denominator = 1;

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;
};

/// Frequencies sharing one denominator.
struct FrequencySet {
  int denominator = 1;
  std::vector<std::vector<int>> numerators;

  std::size_t size() const { return numerators.size(); }
  FrequencyVector at(std::size_t i) const { return {numerators[i], denominator}; }

  friend bool operator==(const FrequencySet&, const FrequencySet&) = default;
};

namespace detail {

inline void require_base_cell(const ElementSet& base, std::size_t dim) {
  if (base.empty()) throw std::invalid_argument("base set must be nonempty");
  for (const auto& x : base) {
    if (x.size() != dim) throw std::invalid_argument("base element has wrong dimension");
    for (int c : x.coords)
      if (c < 0 || c > 2) throw std::invalid_argument("base coordinates must lie in {0,1,2}");
  }
}

// Calls f(k) for every k in [0, m)^dim in lexicographic order.
template <class F>
void for_each_cell(std::size_t dim, long long m, F&& f) {
  std::vector<int> k(dim, 0);
  while (true) {
    f(std::as_const(k));
    std::size_t j = dim;
    while (j > 0 && ++k[j - 1] == m) k[--j] = 0;
    if (j == 0) return;
  }
}

inline std::int64_t checked_pow(std::int64_t base, std::size_t e) {
  std::int64_t r = 1;
  for (std::size_t i = 0; i < e; ++i)
    if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("integer power overflows 64 bits");
  return r;
}

}  // namespace detail

inline LatticeSet build_omega1(const ElementSet& base, const LatticeConfig& cfg) {
  cfg.validate();
  detail::require_base_cell(base, cfg.dimension);
  const ElementSet cell = normalized(base);
  LatticeSet out(cfg.dimension);
  out.reserve(cell.size() * static_cast<std::size_t>(detail::checked_pow(cfg.m, cfg.dimension)));
  std::vector<int> p(cfg.dimension);
  detail::for_each_cell(cfg.dimension, cfg.m, [&](const std::vector<int>& k) {
    for (const auto& x : cell) {
      for (std::size_t j = 0; j < p.size(); ++j) p[j] = 3 * k[j] + x[j];
      out.push_back(p);
    }
  });
  return out;
}

/// Numerators (l + M * xi0) over 3M, sorted lexicographically.
inline FrequencySet build_lambda1(const ElementSet& base_spectrum, const LatticeConfig& cfg) {
  cfg.validate();
  detail::require_base_cell(base_spectrum, cfg.dimension);
  FrequencySet out;
  out.denominator = static_cast<int>(cfg.modulus());
  detail::for_each_cell(cfg.dimension, cfg.m, [&](const std::vector<int>& l) {
    for (const auto& xi : base_spectrum) {
      std::vector<int> v(cfg.dimension);
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = GroupSpec::mod(l[j] + cfg.m * xi[j], out.denominator);
      out.numerators.push_back(std::move(v));
    }
  });
  std::sort(out.numerators.begin(), out.numerators.end());
  if (std::adjacent_find(out.numerators.begin(), out.numerators.end()) != out.numerators.end())
    throw std::invalid_argument("base spectrum has repeated frequencies");
  return out;
}

/// Exact zero test for sum_{x in set} omega_D^{delta . x}, memoized on delta mod D.
class LatticeCharacterSums {
public:
  LatticeCharacterSums(const LatticeSet& set, int denominator) : set_(set), denominator_(denominator) {
    if (denominator < 1 || denominator > kMaxCyclotomicOrder)
      throw std::domain_error("frequency denominator " + std::to_string(denominator) + " outside 1.." +
                              std::to_string(kMaxCyclotomicOrder));
  }

  CyclotomicInt sum(std::span<const long long> delta) const {
    if (delta.size() != set_.dimension()) throw std::invalid_argument("frequency has wrong dimension");
    CyclotomicInt s(denominator_);
    for (std::size_t i = 0; i < set_.size(); ++i) {
      const auto p = set_.point(i);
      long long e = 0;
      for (std::size_t j = 0; j < p.size(); ++j) e = (e + delta[j] % denominator_ * p[j]) % denominator_;
      s.add_root(e);
    }
    return s;
  }

  bool vanishes(std::span<const long long> delta) const {
    std::uint64_t key = 0;
    std::vector<long long> reduced(delta.size());
    for (std::size_t j = 0; j < delta.size(); ++j) {
      reduced[j] = GroupSpec::mod(delta[j], denominator_);
      key = key * static_cast<std::uint64_t>(denominator_) + static_cast<std::uint64_t>(reduced[j]);
    }
    if (delta.size() > 10) return sum(reduced).is_zero();  // key would overflow
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool z = sum(reduced).is_zero();
    memo_.emplace(key, z);
    return z;
  }

  int denominator() const { return denominator_; }

private:
  const LatticeSet& set_;
  int denominator_;
  mutable std::unordered_map<std::uint64_t, bool> memo_;
};

struct LatticeOrthoCheck {
  bool valid = false;
  bool cardinality_mismatch = false;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<FrequencyVector, FrequencyVector>> witness;

  explicit operator bool() const { return valid; }
};

inline std::vector<long long> frequency_difference(const FrequencySet& f, std::size_t a, std::size_t b) {
  std::vector<long long> d(f.numerators[a].size());
  for (std::size_t j = 0; j < d.size(); ++j)
    d[j] = static_cast<long long>(f.numerators[a][j]) - f.numerators[b][j];
  return d;
}

/// Direct exact summation over Omega1 for every unordered pair of frequencies.
inline LatticeOrthoCheck verify_ortho_lattice(const LatticeSet& omega1, const FrequencySet& lambda1) {
  if (lambda1.size() != omega1.size()) {
    LatticeOrthoCheck out;
    out.cardinality_mismatch = true;
    return out;
  }
  for (const auto& v : lambda1.numerators)
    if (v.size() != omega1.dimension()) throw std::invalid_argument("frequency has wrong dimension");
  LatticeCharacterSums sums(omega1, lambda1.denominator);
  LatticeOrthoCheck out;
  for (std::size_t a = 0; a < lambda1.size(); ++a)
    for (std::size_t b = a + 1; b < lambda1.size(); ++b) {
      ++out.pairs_checked;
      if (!sums.vanishes(frequency_difference(lambda1, a, b))) {
        out.witness = std::make_pair(lambda1.at(a), lambda1.at(b));
        return out;
      }
    }
  out.valid = true;
  return out;
}

/// Factorized verdict for a lifted set: the sum over Omega1 splits into
/// prod_j (sum_{k<M} omega_M^{delta_j k}) times the sum over the base cell,
/// and the geometric factor vanishes unless every delta_j = 0 mod M.
inline bool ortho_pair_vanishes_factorized(const ElementSet& base, const LatticeConfig& cfg,
                                           std::span<const long long> delta) {
  const long long d = cfg.modulus();
  for (long long v : delta)
    if (GroupSpec::mod(v, static_cast<int>(cfg.m)) != 0) return true;
  CyclotomicInt s(static_cast<int>(d));
  for (const auto& x : base) {
    long long e = 0;
    for (std::size_t j = 0; j < delta.size(); ++j) e += delta[j] * x[j];
    s.add_root(e);
  }
  return s.is_zero();
}

/// Per-pair verdicts of both evaluation routes; `agree` is false if any
/// pair disagrees.
struct OrthoRouteComparison {
  std::uint64_t pairs = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t vanishing = 0;
  bool agree() const { return disagreements == 0; }
};

inline OrthoRouteComparison compare_ortho_routes(const ElementSet& base, const LatticeConfig& cfg,
                                                 const LatticeSet& omega1, const FrequencySet& lambda1) {
  LatticeCharacterSums sums(omega1, lambda1.denominator);
  OrthoRouteComparison out;
  for (std::size_t a = 0; a < lambda1.size(); ++a)
    for (std::size_t b = a + 1; b < lambda1.size(); ++b) {
      const auto d = frequency_difference(lambda1, a, b);
      const bool direct = sums.vanishes(d);
      const bool fast = ortho_pair_vanishes_factorized(base, cfg, d);
      ++out.pairs;
      out.vanishing += direct ? 1 : 0;
      out.disagreements += direct != fast ? 1 : 0;
    }
  return out;
}

/// Every aligned cell 3k + {0,1,2}^n, k in [0,M)^n, holds exactly
/// `per_cell` points, and no point lies outside [0,3M)^n.
inline bool cell_count_check(const LatticeSet& omega1, const LatticeConfig& cfg, std::size_t per_cell) {
  cfg.validate();
  const auto cells = static_cast<std::size_t>(detail::checked_pow(cfg.m, cfg.dimension));
  std::vector<std::size_t> count(cells, 0);
  for (std::size_t i = 0; i < omega1.size(); ++i) {
    const auto p = omega1.point(i);
    std::size_t idx = 0;
    for (int c : p) {
      if (c < 0 || c >= cfg.modulus()) return false;
      idx = idx * static_cast<std::size_t>(cfg.m) + static_cast<std::size_t>(c / 3);
    }
    ++count[idx];
  }
  return std::all_of(count.begin(), count.end(), [&](std::size_t c) { return c == per_cell; });
}

/// #((t + set) intersect (x0 + [0,L)^n)) by a pass over the set.
inline std::uint64_t window_count(const LatticeSet& set, std::span<const long long> t, std::span<const long long> x0,
                                  long long side) {
  if (t.size() != set.dimension() || x0.size() != set.dimension())
    throw std::invalid_argument("window vectors have wrong dimension");
  std::uint64_t f = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto p = set.point(i);
    bool inside = true;
    for (std::size_t j = 0; j < p.size() && inside; ++j) {
      const long long y = p[j] + t[j] - x0[j];
      inside = y >= 0 && y < side;
    }
    f += inside ? 1 : 0;
  }
  return f;
}

/// Dense bit index over the bounding box; rows run along the last axis.
class WindowCounter {
public:
  explicit WindowCounter(const LatticeSet& set) : dim_(set.dimension()) {
    if (set.empty()) throw std::invalid_argument("window counter needs a nonempty set");
    lo_.assign(dim_, 0);
    hi_.assign(dim_, 0);
    for (std::size_t j = 0; j < dim_; ++j) lo_[j] = hi_[j] = set.point(0)[j];
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        lo_[j] = std::min<long long>(lo_[j], set.point(i)[j]);
        hi_[j] = std::max<long long>(hi_[j], set.point(i)[j]);
      }
    extent_.resize(dim_);
    rows_ = 1;
    for (std::size_t j = 0; j < dim_; ++j) {
      extent_[j] = hi_[j] - lo_[j] + 1;
      if (j + 1 < dim_) rows_ *= static_cast<std::size_t>(extent_[j]);
    }
    words_per_row_ = static_cast<std::size_t>((extent_[dim_ - 1] + 63) / 64);
    bits_.assign(rows_ * words_per_row_, 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
      const auto p = set.point(i);
      const long long last = p[dim_ - 1] - lo_[dim_ - 1];
      bits_[row_index(p) * words_per_row_ + static_cast<std::size_t>(last / 64)] |= std::uint64_t{1} << (last % 64);
    }
  }

  std::uint64_t count(std::span<const long long> t, std::span<const long long> x0, long long side) const {
    if (t.size() != dim_ || x0.size() != dim_) throw std::invalid_argument("window vectors have wrong dimension");
    // Window in set coordinates, clipped to the bounding box.
    std::vector<long long> a(dim_), b(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      a[j] = std::max(x0[j] - t[j], lo_[j]) - lo_[j];
      b[j] = std::min(x0[j] - t[j] + side, hi_[j] + 1) - lo_[j];
      if (a[j] >= b[j]) return 0;
    }
    std::uint64_t total = 0;
    std::vector<long long> c(a.begin(), a.end() - 1);
    while (true) {
      std::size_t row = 0;
      for (std::size_t j = 0; j + 1 < dim_; ++j) row = row * static_cast<std::size_t>(extent_[j]) + static_cast<std::size_t>(c[j]);
      total += count_row(row, a[dim_ - 1], b[dim_ - 1]);
      std::size_t j = dim_ - 1;
      while (j > 0 && ++c[j - 1] == b[j - 1]) {
        c[j - 1] = a[j - 1];
        --j;
      }
      if (j == 0) return total;
    }
  }

private:
  std::size_t row_index(std::span<const int> p) const {
    std::size_t r = 0;
    for (std::size_t j = 0; j + 1 < dim_; ++j)
      r = r * static_cast<std::size_t>(extent_[j]) + static_cast<std::size_t>(p[j] - lo_[j]);
    return r;
  }

  std::uint64_t count_row(std::size_t row, long long from, long long to) const {
    std::uint64_t total = 0;
    const std::uint64_t* w = bits_.data() + row * words_per_row_;
    for (long long word = from / 64; word * 64 < to; ++word) {
      std::uint64_t bits = w[word];
      const long long base = word * 64;
      if (from > base) bits &= ~std::uint64_t{0} << (from - base);
      if (to < base + 64) bits &= (std::uint64_t{1} << (to - base)) - 1;
      total += static_cast<std::uint64_t>(__builtin_popcountll(bits));
    }
    return total;
  }

  std::size_t dim_;
  std::vector<long long> lo_, hi_, extent_;
  std::size_t rows_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct DensityOptions {
  long long stride = 4;
  long long margin = 0;      // windows stay inside [margin, 3M - margin)^n
  std::uint64_t trials = 0;  // 0: every grid position; otherwise a seeded sample
  std::uint64_t seed = 0x5eed;
};

struct DensityReport {
  std::uint64_t windows = 0;
  std::uint64_t nonzero_windows = 0;
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;
  std::uint64_t per_cell = 0;
  std::int64_t window_volume = 0;     // L^n
  std::int64_t cell_volume = 0;       // 3^n
  bool within_bound = true;           // |f/L^n - per_cell/3^n| <= 12/L for every nonzero window

  double target_density() const { return static_cast<double>(per_cell) / static_cast<double>(cell_volume); }
  double min_density() const { return static_cast<double>(min_count) / static_cast<double>(window_volume); }
  double max_density() const { return static_cast<double>(max_count) / static_cast<double>(window_volume); }
};

namespace detail {

// |f/L^n - c/3^n| <= 12/L  <=>  L * |f * 3^n - c * L^n| <= 12 * L^n * 3^n
inline bool density_within_bound(std::uint64_t f, std::uint64_t per_cell, long long side, std::int64_t window_volume,
                                 std::int64_t cell_volume) {
  const __int128 lhs = static_cast<__int128>(side) *
                       (static_cast<__int128>(f) * cell_volume - static_cast<__int128>(per_cell) * window_volume);
  const __int128 rhs = static_cast<__int128>(12) * window_volume * cell_volume;
  return (lhs < 0 ? -lhs : lhs) <= rhs;
}

}  // namespace detail

/// Window densities of Omega1 against the cell density per_cell / 3^n, over
/// windows x0 + [0,L)^n inside the bulk [margin, 3M - margin)^n with x0 on
/// the grid margin + stride * Z^n.
inline DensityReport density_check(const LatticeSet& omega1, const LatticeConfig& cfg, std::size_t per_cell,
                                   const DensityOptions& opt = {}) {
  cfg.validate_density();
  if (opt.stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (opt.margin < 0 || 2 * opt.margin + cfg.l > cfg.modulus())
    throw std::invalid_argument("bulk region too small for the window");
  const std::size_t dim = cfg.dimension;
  const long long positions = (cfg.modulus() - 2 * opt.margin - cfg.l) / opt.stride + 1;

  DensityReport rep;
  rep.per_cell = per_cell;
  rep.window_volume = detail::checked_pow(cfg.l, dim);
  rep.cell_volume = detail::checked_pow(3, dim);
  rep.min_count = ~std::uint64_t{0};

  const WindowCounter counter(omega1);
  const std::vector<long long> origin(dim, 0);
  std::vector<long long> x0(dim);
  auto visit = [&](const std::vector<int>& grid) {
    for (std::size_t j = 0; j < dim; ++j) x0[j] = opt.margin + grid[j] * opt.stride;
    const std::uint64_t f = counter.count(origin, x0, cfg.l);
    ++rep.windows;
    rep.min_count = std::min(rep.min_count, f);
    rep.max_count = std::max(rep.max_count, f);
    if (f == 0) return;
    ++rep.nonzero_windows;
    if (!detail::density_within_bound(f, per_cell, cfg.l, rep.window_volume, rep.cell_volume))
      rep.within_bound = false;
  };

  if (opt.trials == 0) {
    detail::for_each_cell(dim, positions, visit);
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long long> pick(0, positions - 1);
    std::vector<int> grid(dim);
    for (std::uint64_t i = 0; i < opt.trials; ++i) {
      for (auto& g : grid) g = static_cast<int>(pick(rng));
      visit(grid);
    }
  }
  return rep;
}

struct AlignedWindowReport {
  std::uint64_t windows = 0;
  std::uint64_t expected = 0;  // per_cell * (L/3)^n
  bool exact = true;
};

/// Windows of side L (a multiple of 3) with corners on the 3-grid inside
/// [0,3M)^n contain exactly per_cell * (L/3)^n points.
inline AlignedWindowReport aligned_window_check(const LatticeSet& omega1, const LatticeConfig& cfg,
                                                std::size_t per_cell) {
  cfg.validate_density();
  if (cfg.l % 3 != 0) throw std::invalid_argument("aligned windows need L divisible by 3");
  AlignedWindowReport rep;
  rep.expected = per_cell * static_cast<std::uint64_t>(detail::checked_pow(cfg.l / 3, cfg.dimension));
  const WindowCounter counter(omega1);
  const std::vector<long long> origin(cfg.dimension, 0);
  std::vector<long long> x0(cfg.dimension);
  detail::for_each_cell(cfg.dimension, cfg.m - cfg.l / 3 + 1, [&](const std::vector<int>& k) {
    for (std::size_t j = 0; j < x0.size(); ++j) x0[j] = 3LL * k[j];
    ++rep.windows;
    if (counter.count(origin, x0, cfg.l) != rep.expected) rep.exact = false;
  });
  return rep;
}

/// #Omega1 does not divide (3M)^n, so Omega1 cannot tile the torus
/// (Z/3MZ)^n. This says nothing by itself about tilings of Z^n.
inline std::optional<DivisibilityObstruction> torus_non_tiling(const LatticeSet& omega1, const LatticeConfig& cfg) {
  cfg.validate();
  if (omega1.empty()) throw std::invalid_argument("set must be nonempty");
  for (std::size_t i = 0; i < omega1.size(); ++i)
    for (int c : omega1.point(i))
      if (c < 0 || c >= cfg.modulus()) throw std::invalid_argument("set is not contained in [0,3M)^n");
  const auto torus = static_cast<std::uint64_t>(detail::checked_pow(cfg.modulus(), cfg.dimension));
  return divisibility_check(omega1.size(), torus);
}

}  // namespace fuglede
