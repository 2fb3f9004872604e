#pragma once

// Thickening the lattice set by unit cubes: Omega2 = Omega1 + [0,1)^n with
// frequencies Lambda2 = Lambda1 + Z^n.
//
// For eta in R^n,
//   int_{Omega2} e^{2 pi i eta.x} dx = (sum_{p in Omega1} e^{2 pi i eta.p}) * prod_j c(eta_j)
// with c(0) = 1 and c(s) = (e^{2 pi i s} - 1) / (2 pi i s) otherwise. c(s)
// vanishes exactly at the nonzero integers, so every zero decision reduces to
// an integrality test or an exact cyclotomic zero test. No floating point
// value enters a verdict.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuglede/lattice.hpp"

namespace fuglede {

/// Disjoint unit cubes corner + [0,1)^n.
struct CubeUnion {
  LatticeSet corners;

  std::size_t dimension() const { return corners.dimension(); }
  std::uint64_t measure() const { return corners.size(); }
};

inline CubeUnion build_omega2(const LatticeSet& omega1) {
  if (omega1.empty()) throw std::invalid_argument("cannot thicken an empty set");
  if (omega1.has_duplicates()) throw std::invalid_argument("lattice set has repeated points");
  return CubeUnion{omega1};
}

/// base + shift, base reduced mod 1.
struct ExtendedFrequency {
  FrequencyVector base;
  std::vector<long long> shift;
};

/// An exact rational vector numerators / denominator (not reduced mod 1).
struct RationalVector {
  std::vector<long long> numerators;
  long long denominator = 1;

  bool is_zero() const {
    for (long long v : numerators)
      if (v != 0) return false;
    return true;
  }

  RationalVector operator-() const {
    RationalVector r = *this;
    for (auto& v : r.numerators) v = -v;
    return r;
  }
};

inline RationalVector difference(const ExtendedFrequency& a, const ExtendedFrequency& b) {
  if (a.base.denominator != b.base.denominator) throw std::invalid_argument("mixed frequency denominators");
  const std::size_t n = a.base.numerators.size();
  if (b.base.numerators.size() != n || a.shift.size() != n || b.shift.size() != n)
    throw std::invalid_argument("frequency dimension mismatch");
  RationalVector eta{std::vector<long long>(n), a.base.denominator};
  for (std::size_t j = 0; j < n; ++j)
    eta.numerators[j] = static_cast<long long>(a.base.numerators[j]) - b.base.numerators[j] +
                        eta.denominator * (a.shift[j] - b.shift[j]);
  return eta;
}

namespace detail {

inline bool inner_product_vanishes(const LatticeCharacterSums& sums, const RationalVector& eta) {
  if (eta.is_zero()) throw std::invalid_argument("the zero frequency pairs to |Omega2|, not 0");
  if (eta.denominator != sums.denominator()) throw std::invalid_argument("frequency denominator mismatch");
  for (long long v : eta.numerators)
    if (v != 0 && v % eta.denominator == 0) return true;  // cube factor c(eta_j) = 0
  return sums.vanishes(eta.numerators);
}

}  // namespace detail

/// Exact decision of whether the exponential with frequency eta integrates to
/// zero over Omega1 + [0,1)^n. eta must be nonzero.
inline bool inner_product_is_zero(const LatticeSet& omega1, const RationalVector& eta) {
  if (eta.denominator < 1) throw std::invalid_argument("denominator must be positive");
  LatticeCharacterSums sums(omega1, static_cast<int>(eta.denominator));
  return detail::inner_product_vanishes(sums, eta);
}

struct TruncationOptions {
  /// Pairs examined at most; a larger pair space is sampled with a seeded
  /// generator. 0 means no cap.
  std::uint64_t max_pairs = 0;
  std::uint64_t seed = 0xf091ede;
};

struct TruncationCheck {
  bool valid = false;
  bool sampled = false;
  std::uint64_t frequencies = 0;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<ExtendedFrequency, ExtendedFrequency>> witness;

  explicit operator bool() const { return valid; }
};

/// Frequencies lambda + k with lambda in Lambda1 and |k|_inf <= radius,
/// ordered by lambda then k lexicographically.
inline std::vector<ExtendedFrequency> truncated_spectrum(const FrequencySet& lambda1, long long radius) {
  if (radius < 0) throw std::invalid_argument("k radius must be >= 0");
  std::vector<ExtendedFrequency> out;
  if (lambda1.size() == 0) return out;
  const std::size_t n = lambda1.numerators.front().size();
  for (std::size_t i = 0; i < lambda1.size(); ++i)
    detail::for_each_cell(n, 2 * radius + 1, [&](const std::vector<int>& k) {
      ExtendedFrequency f{lambda1.at(i), std::vector<long long>(n)};
      for (std::size_t j = 0; j < n; ++j) f.shift[j] = k[j] - radius;
      out.push_back(std::move(f));
    });
  return out;
}

/// Pairwise orthogonality over Omega2 of a finite truncation of Lambda2.
/// Orthogonality is all a finite check can certify; completeness of the
/// infinite family is not checked.
inline TruncationCheck verify_spectrum_truncation(const LatticeSet& omega1, const FrequencySet& lambda1,
                                                  long long radius, const TruncationOptions& opt = {}) {
  const auto freqs = truncated_spectrum(lambda1, radius);
  LatticeCharacterSums sums(omega1, lambda1.denominator);
  TruncationCheck out;
  out.frequencies = freqs.size();
  const std::uint64_t f = freqs.size();
  const std::uint64_t total = f < 2 ? 0 : f * (f - 1) / 2;

  auto check = [&](std::size_t a, std::size_t b) {
    ++out.pairs_checked;
    if (detail::inner_product_vanishes(sums, difference(freqs[a], freqs[b]))) return true;
    out.witness = std::make_pair(freqs[a], freqs[b]);
    return false;
  };

  if (opt.max_pairs == 0 || total <= opt.max_pairs) {
    for (std::size_t a = 0; a < f; ++a)
      for (std::size_t b = a + 1; b < f; ++b)
        if (!check(a, b)) return out;
  } else {
    out.sampled = true;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, f - 1);
    for (std::uint64_t i = 0; i < opt.max_pairs; ++i) {
      std::uint64_t a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      if (!check(std::min(a, b), std::max(a, b))) return out;
    }
  }
  out.valid = true;
  return out;
}

}  // namespace fuglede
