#pragma once

// Finite abelian groups Z_{n_1} x ... x Z_{n_k}, their elements, and the
// self-dual pairing. Elements double as dual elements (characters).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuglede {

/// Largest group order accepted by operations that enumerate every element.
inline constexpr std::uint64_t kMaxExhaustiveOrder = std::uint64_t{1} << 20;

/// Thrown when a search exceeds its node budget. Distinct from a completed
/// search that found nothing.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GroupElement {
  std::vector<int> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<int> c) : coords(std::move(c)) {}
  GroupElement(std::initializer_list<int> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  int operator[](std::size_t j) const { return coords[j]; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

using ElementSet = std::vector<GroupElement>;

using Rank = std::uint32_t;

class GroupSpec {
public:
  GroupSpec() = default;

  explicit GroupSpec(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw std::invalid_argument("group needs at least one factor");
    order_ = 1;
    exponent_ = 1;
    for (int n : moduli_) {
      if (n < 2) throw std::invalid_argument("group modulus must be >= 2, got " + std::to_string(n));
      if (order_ > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(n))
        throw std::invalid_argument("group order too large");
      order_ *= static_cast<std::uint64_t>(n);
      exponent_ = std::lcm(exponent_, n);
    }
    strides_.assign(moduli_.size(), 1);
    for (std::size_t j = moduli_.size(); j-- > 1;)
      strides_[j - 1] = strides_[j] * static_cast<std::uint64_t>(moduli_[j]);
  }

  /// Z_n^k.
  static GroupSpec power(int n, int k) {
    if (k < 1) throw std::invalid_argument("group power must be >= 1");
    return GroupSpec(std::vector<int>(static_cast<std::size_t>(k), n));
  }

  const std::vector<int>& moduli() const { return moduli_; }
  std::size_t dimension() const { return moduli_.size(); }
  int modulus(std::size_t j) const { return moduli_[j]; }
  int exponent() const { return exponent_; }
  std::uint64_t order() const { return order_; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.moduli_ == b.moduli_; }

  bool contains(const GroupElement& x) const {
    if (x.size() != dimension()) return false;
    for (std::size_t j = 0; j < dimension(); ++j)
      if (x[j] < 0 || x[j] >= moduli_[j]) return false;
    return true;
  }

  void require(const GroupElement& x) const {
    if (x.size() != dimension())
      throw std::invalid_argument("element has " + std::to_string(x.size()) +
                                  " coordinates, group has " + std::to_string(dimension()));
    if (!contains(x)) throw std::invalid_argument("element coordinate out of range");
  }

  void require(const ElementSet& s) const {
    for (const auto& x : s) require(x);
  }

  void require_exhaustive(std::uint64_t limit = kMaxExhaustiveOrder) const {
    if (order_ > limit)
      throw std::length_error("group of order " + std::to_string(order_) +
                              " exceeds exhaustive limit " + std::to_string(limit));
  }

  GroupElement zero() const { return GroupElement(std::vector<int>(dimension(), 0)); }

  /// Reduce arbitrary integer coordinates into canonical range.
  GroupElement reduce(std::vector<int> c) const {
    if (c.size() != dimension()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = mod(c[j], moduli_[j]);
    return GroupElement(std::move(c));
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    for (std::size_t j = 0; j < dimension(); ++j) r.coords[j] = (a[j] + b[j]) % moduli_[j];
    return r;
  }

  GroupElement sub(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    for (std::size_t j = 0; j < dimension(); ++j)
      r.coords[j] = (a[j] - b[j] + moduli_[j]) % moduli_[j];
    return r;
  }

  GroupElement neg(const GroupElement& a) const { return sub(zero(), a); }

  /// Mixed-radix index in [0, order); the first coordinate is most significant.
  Rank rank(const GroupElement& x) const {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < dimension(); ++j) r += strides_[j] * static_cast<std::uint64_t>(x[j]);
    return static_cast<Rank>(r);
  }

  GroupElement unrank(Rank r) const {
    std::vector<int> c(dimension());
    std::uint64_t rest = r;
    for (std::size_t j = 0; j < dimension(); ++j) {
      c[j] = static_cast<int>(rest / strides_[j]);
      rest %= strides_[j];
    }
    return GroupElement(std::move(c));
  }

  Rank add_rank(Rank a, Rank b) const { return combine(a, b, +1); }
  Rank sub_rank(Rank a, Rank b) const { return combine(a, b, -1); }

  std::vector<Rank> ranks(const ElementSet& s) const {
    std::vector<Rank> r;
    r.reserve(s.size());
    for (const auto& x : s) r.push_back(rank(x));
    return r;
  }

  ElementSet unrank_all(const std::vector<Rank>& r) const {
    ElementSet s;
    s.reserve(r.size());
    for (Rank v : r) s.push_back(unrank(v));
    return s;
  }

  std::string descriptor() const {
    std::string out;
    std::size_t j = 0;
    while (j < moduli_.size()) {
      std::size_t k = j;
      while (k < moduli_.size() && moduli_[k] == moduli_[j]) ++k;
      if (!out.empty()) out += 'x';
      out += std::to_string(moduli_[j]);
      if (k - j > 1) out += '^' + std::to_string(k - j);
      j = k;
    }
    return out;
  }

  static int mod(long long a, int n) {
    long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
  }

private:
  Rank combine(Rank a, Rank b, int sign) const {
    std::uint64_t ra = a, rb = b, out = 0;
    for (std::size_t j = 0; j < dimension(); ++j) {
      const auto s = strides_[j];
      const int da = static_cast<int>(ra / s), db = static_cast<int>(rb / s);
      ra %= s;
      rb %= s;
      const int n = moduli_[j];
      out += s * static_cast<std::uint64_t>(sign > 0 ? (da + db) % n : (da - db + n) % n);
    }
    return static_cast<Rank>(out);
  }

  std::vector<int> moduli_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
  int exponent_ = 1;
};

/// Parse "n" (Z_n), "p^k" (Z_p^k) and products "n1xn2x..." whose factors may
/// themselves be powers, e.g. "2^3x3".
inline GroupSpec parse_group_descriptor(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("bad group descriptor '" + std::string(text) + "'");
    return std::stoi(std::string(s));
  };
  std::vector<int> moduli;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('x', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view factor = text.substr(start, end - start);
    const auto caret = factor.find('^');
    const int base = parse_int(factor.substr(0, caret));
    const int power = caret == std::string_view::npos ? 1 : parse_int(factor.substr(caret + 1));
    if (power < 1 || power > 64) throw std::invalid_argument("bad exponent in group descriptor");
    moduli.insert(moduli.end(), static_cast<std::size_t>(power), base);
    start = end + 1;
  }
  return GroupSpec(std::move(moduli));
}

/// Exponent of the character value: the character of xi evaluated at x is
/// omega_m^{pairing(g, xi, x)} with m = g.exponent().
inline int pairing(const GroupSpec& g, const GroupElement& xi, const GroupElement& x) {
  g.require(xi);
  g.require(x);
  const int m = g.exponent();
  long long acc = 0;
  for (std::size_t j = 0; j < g.dimension(); ++j)
    acc += static_cast<long long>(xi[j]) * x[j] % g.modulus(j) * (m / g.modulus(j));
  return GroupSpec::mod(acc, m);
}

/// Unit vector e_j, with j counted from 1.
inline GroupElement standard_basis(const GroupSpec& g, std::size_t j) {
  if (j < 1 || j > g.dimension())
    throw std::out_of_range("basis index " + std::to_string(j) + " outside 1.." + std::to_string(g.dimension()));
  GroupElement e = g.zero();
  e.coords[j - 1] = 1;
  return e;
}

inline ElementSet standard_basis_set(const GroupSpec& g) {
  ElementSet s;
  for (std::size_t j = 1; j <= g.dimension(); ++j) s.push_back(standard_basis(g, j));
  return s;
}

inline ElementSet translate(const GroupSpec& g, const ElementSet& s, const GroupElement& t) {
  ElementSet out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(g.add(x, t));
  return out;
}

/// Sorted, duplicate-free copy.
inline ElementSet normalized(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool has_duplicates(const ElementSet& s) { return normalized(s).size() != s.size(); }

inline ElementSet all_elements(const GroupSpec& g) {
  g.require_exhaustive();
  ElementSet s;
  s.reserve(g.order());
  for (std::uint64_t r = 0; r < g.order(); ++r) s.push_back(g.unrank(static_cast<Rank>(r)));
  return s;
}

}  // namespace fuglede
