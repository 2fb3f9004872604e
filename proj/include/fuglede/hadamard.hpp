#pragma once

// Butson-type Hadamard matrices in log form, and the construction that turns
// an N x N matrix over q-th roots of unity into a spectral set of N elements
// in Z_q^N.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"
#include "fuglede/spectra.hpp"

namespace fuglede {

/// Entry (j, k) is omega_q^{logs[j][k]}.
class ButsonMatrix {
public:
  ButsonMatrix(int q, std::vector<std::vector<int>> logs) : q_(q), logs_(std::move(logs)) {
    if (q < 2) throw std::invalid_argument("root order must be >= 2");
    if (logs_.empty()) throw std::invalid_argument("matrix must have at least one row");
    for (auto& row : logs_) {
      if (row.size() != logs_.size()) throw std::invalid_argument("matrix must be square");
      for (int& v : row) v = GroupSpec::mod(v, q_);
    }
  }

  int q() const { return q_; }
  std::size_t size() const { return logs_.size(); }
  const std::vector<std::vector<int>>& logs() const { return logs_; }
  int log(std::size_t j, std::size_t k) const { return logs_[j][k]; }

  friend bool operator==(const ButsonMatrix&, const ButsonMatrix&) = default;

private:
  int q_;
  std::vector<std::vector<int>> logs_;
};

struct ButsonCheck {
  bool valid = false;
  std::optional<std::pair<std::size_t, std::size_t>> failing_rows;  // 0-based

  explicit operator bool() const { return valid; }
};

inline CyclotomicInt row_inner_product(const ButsonMatrix& h, std::size_t a, std::size_t b) {
  CyclotomicInt s(h.q());
  for (std::size_t k = 0; k < h.size(); ++k) s.add_root(h.log(a, k) - h.log(b, k));
  return s;
}

inline ButsonCheck verify_butson(const ButsonMatrix& h) {
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b)
      if (!row_inner_product(h, a, b).is_zero()) return {false, std::make_pair(a, b)};
  return {true, std::nullopt};
}

/// The 12 x 12 real Hadamard matrix, +1 -> 0 and -1 -> 1.
inline ButsonMatrix hadamard_12() {
  return ButsonMatrix(2, {
                             {0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                             {0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0},
                             {0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1},
                             {0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0},
                             {0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0},
                             {0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 0},
                             {0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 1},
                             {0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1},
                             {0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1},
                             {0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0},
                             {0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 1},
                             {0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0},
                         });
}

/// The 6 x 6 matrix over cube roots of unity, 1 -> 0, w -> 1, w^2 -> 2.
inline ButsonMatrix hadamard_6() {
  return ButsonMatrix(3, {
                             {0, 0, 0, 0, 0, 0},
                             {0, 0, 1, 1, 2, 2},
                             {0, 1, 0, 2, 2, 1},
                             {0, 1, 2, 0, 1, 2},
                             {0, 2, 2, 1, 0, 1},
                             {0, 2, 1, 2, 1, 0},
                         });
}

/// Looks up an embedded matrix by name ("h12", "h6").
inline std::optional<ButsonMatrix> named_matrix(const std::string& name) {
  if (name == "h12") return hadamard_12();
  if (name == "h6") return hadamard_6();
  return std::nullopt;
}

/// A set T in a group together with a proposed spectrum L.
struct SpectralPair {
  GroupSpec group;
  ElementSet set;
  ElementSet spectrum;
};

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// T = {e_1..e_N} in Z_q^N with xi_k = row k of the log matrix, so that the
/// character of xi_k at e_j is the (k, j) entry.
inline SpectralPair spectrum_from_butson(const ButsonMatrix& h) {
  if (!is_prime(h.q())) throw std::invalid_argument("spectrum_from_butson needs a prime root order");
  if (auto check = verify_butson(h); !check)
    throw std::invalid_argument("matrix rows " + std::to_string(check.failing_rows->first + 1) + " and " +
                                std::to_string(check.failing_rows->second + 1) + " are not orthogonal");
  SpectralPair out{GroupSpec::power(h.q(), static_cast<int>(h.size())), {}, {}};
  out.set = standard_basis_set(out.group);
  for (const auto& row : h.logs()) out.spectrum.emplace_back(row);
  return out;
}

namespace detail {

inline void require_prime_power_group(const GroupSpec& g) {
  for (int n : g.moduli())
    if (n != g.modulus(0) || !is_prime(n)) throw std::invalid_argument("expected a group Z_q^N with q prime");
}

}  // namespace detail

/// Z_q^N -> Z_q^{N-1}. Translates T by -e_1 into Gamma = {sum x_j = 0},
/// normalizes each frequency modulo the diagonal (1,...,1) so its first
/// coordinate is 0, then identifies Gamma with Z_q^{N-1} by dropping the
/// first coordinate of both elements and frequencies. The pairing is
/// preserved: for x in Gamma, xi.x = sum_{j>=2} (xi_j - xi_1) x_j.
inline SpectralPair descend(const SpectralPair& in) {
  const GroupSpec& g = in.group;
  detail::require_prime_power_group(g);
  if (g.dimension() < 2) throw std::invalid_argument("cannot descend below dimension 1");
  const int q = g.modulus(0);
  const std::size_t n = g.dimension();
  const GroupElement shift = standard_basis(g, 1);

  SpectralPair out{GroupSpec::power(q, static_cast<int>(n - 1)), {}, {}};
  for (const auto& x : in.set) {
    const GroupElement y = g.sub(x, shift);
    long long sum = 0;
    for (int c : y.coords) sum += c;
    if (sum % q != 0) throw std::invalid_argument("translated set is not contained in the zero-sum subgroup");
    out.set.emplace_back(std::vector<int>(y.coords.begin() + 1, y.coords.end()));
  }
  for (const auto& xi : in.spectrum) {
    std::vector<int> c(n - 1);
    for (std::size_t j = 1; j < n; ++j) c[j - 1] = GroupSpec::mod(xi[j] - xi[0], q);
    out.spectrum.emplace_back(std::move(c));
  }
  return out;
}

/// Zero-extends elements and frequencies into Z_q^{n'}.
inline SpectralPair pad_dimension(const SpectralPair& in, std::size_t new_dim) {
  const GroupSpec& g = in.group;
  detail::require_prime_power_group(g);
  if (new_dim < g.dimension()) throw std::invalid_argument("cannot pad to a smaller dimension");
  auto pad = [&](const ElementSet& s) {
    ElementSet out;
    for (const auto& x : s) {
      auto c = x.coords;
      c.resize(new_dim, 0);
      out.emplace_back(std::move(c));
    }
    return out;
  };
  return {GroupSpec::power(g.modulus(0), static_cast<int>(new_dim)), pad(in.set), pad(in.spectrum)};
}

}  // namespace fuglede
