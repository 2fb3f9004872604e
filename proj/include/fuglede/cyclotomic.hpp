#pragma once

// Exact arithmetic on integer combinations of m-th roots of unity.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

inline constexpr int kMaxCyclotomicOrder = 64;

namespace detail {

using Poly = std::vector<std::int64_t>;  // coefficient of x^j at index j

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of monic-divisor division; the remainder must vanish.
inline Poly divide_exact(Poly num, const Poly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("cyclotomic division degree underflow");
  Poly q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::int64_t c = num[i];  // den is monic
    q[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
  }
  trim(num);
  if (!num.empty()) throw std::logic_error("cyclotomic division left a remainder");
  return q;
}

inline Poly compute_cyclotomic(int m, const std::array<Poly, kMaxCyclotomicOrder + 1>& lower) {
  Poly p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = divide_exact(std::move(p), lower[static_cast<std::size_t>(d)]);
  return p;
}

inline const std::array<Poly, kMaxCyclotomicOrder + 1>& cyclotomic_table() {
  static const auto table = [] {
    std::array<Poly, kMaxCyclotomicOrder + 1> t{};
    for (int m = 1; m <= kMaxCyclotomicOrder; ++m) t[static_cast<std::size_t>(m)] = compute_cyclotomic(m, t);
    return t;
  }();
  return table;
}

}  // namespace detail

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
inline const std::vector<std::int64_t>& cyclotomic_polynomial(int m) {
  if (m < 1 || m > kMaxCyclotomicOrder)
    throw std::domain_error("cyclotomic order " + std::to_string(m) + " outside 1.." +
                            std::to_string(kMaxCyclotomicOrder));
  return detail::cyclotomic_table()[static_cast<std::size_t>(m)];
}

/// sum_j coeffs[j] * omega_m^j with omega_m = exp(2 pi i / m).
class CyclotomicInt {
public:
  explicit CyclotomicInt(int order) : order_(order) {
    if (order < 1 || order > kMaxCyclotomicOrder)
      throw std::domain_error("cyclotomic order " + std::to_string(order) + " unsupported");
    coeffs_.assign(static_cast<std::size_t>(order), 0);
  }

  CyclotomicInt(int order, std::vector<std::int64_t> coeffs) : CyclotomicInt(order) {
    if (coeffs.size() != static_cast<std::size_t>(order))
      throw std::invalid_argument("coefficient vector length must equal the order");
    coeffs_ = std::move(coeffs);
  }

  static CyclotomicInt integer(int order, std::int64_t v) {
    CyclotomicInt c(order);
    c.coeffs_[0] = v;
    return c;
  }

  int order() const { return order_; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  /// Adds k * omega^e; e may be any integer.
  void add_root(long long e, std::int64_t k = 1) {
    coeffs_[static_cast<std::size_t>(GroupSpec::mod(e, order_))] += k;
  }

  CyclotomicInt& operator+=(const CyclotomicInt& o) {
    same_order(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  CyclotomicInt& operator-=(const CyclotomicInt& o) {
    same_order(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }
  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }

  // Product in Z[x]/(x^m - 1); omega^m = 1 makes this exact.
  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    a.same_order(b);
    CyclotomicInt r(a.order_);
    const std::size_t m = a.coeffs_.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r.coeffs_[(i + j) % m] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  CyclotomicInt conj() const {
    CyclotomicInt r(order_);
    const std::size_t m = coeffs_.size();
    for (std::size_t j = 0; j < m; ++j) r.coeffs_[(m - j) % m] = coeffs_[j];
    return r;
  }

  /// Remainder of the coefficient polynomial modulo Phi_m.
  std::vector<std::int64_t> reduced() const {
    const auto& phi = cyclotomic_polynomial(order_);
    detail::Poly r = coeffs_;
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = r.size(); i-- > deg;) {
      const std::int64_t c = r[i];
      if (c == 0) continue;
      for (std::size_t k = 0; k <= deg; ++k) r[i - deg + k] -= c * phi[k];
    }
    r.resize(deg);
    return r;
  }

  /// Exact: the value is zero iff the polynomial is divisible by Phi_m.
  bool is_zero() const {
    for (auto c : reduced())
      if (c != 0) return false;
    return true;
  }

  /// Diagnostic only; never used for decisions.
  std::complex<double> to_complex() const {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j] == 0) continue;
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / order_;
      s += static_cast<double>(coeffs_[j]) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return s;
  }

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return a.order_ == b.order_ && (a - b).is_zero();
  }

private:
  void same_order(const CyclotomicInt& o) const {
    if (o.order_ != order_) throw std::invalid_argument("cyclotomic order mismatch");
  }

  int order_;
  std::vector<std::int64_t> coeffs_;
};

inline bool is_zero(const CyclotomicInt& c) { return c.is_zero(); }

/// sum_{x in T} omega_m^{pairing(d, x)}, m the group exponent.
inline CyclotomicInt character_sum(const GroupSpec& g, const ElementSet& t, const GroupElement& d) {
  if (t.empty()) throw std::invalid_argument("character sum over an empty set");
  CyclotomicInt s(g.exponent());
  for (const auto& x : t) s.add_root(pairing(g, d, x));
  return s;
}

}  // namespace fuglede
