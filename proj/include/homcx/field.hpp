#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homcx {

/// Arithmetic in GF(p) for a prime 2 <= p < 2^31. Elements are plain
/// residues in [0, p); the field object carries the modulus.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("GF(p) requires a prime 2 <= p < 2^31, got " + std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }

  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Element pow(Element a, std::uint64_t e) const {
    Element r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
    return pow(a, p_ - 2);
  }
  /// Signed representative in (-p/2, p/2], used when printing.
  std::int64_t centered(Element a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }
  /// Multiplicative order of a nonzero element.
  std::uint32_t order(Element a) const {
    if (a == 0) throw std::domain_error("order of zero");
    Element x = a;
    std::uint32_t k = 1;
    while (x != 1) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
  std::uint32_t p_;
};

}  // namespace homcx
