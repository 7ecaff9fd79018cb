#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace endolift {

using GfElem = std::uint8_t;

inline constexpr int kMaxFieldDegree = 8;

/// GF(2^m) for 1 <= m <= 8, elements are bit-vectors of polynomial
/// coefficients reduced modulo a fixed Conway polynomial. Multiplication
/// goes through log/antilog tables; the Conway polynomials are primitive so
/// x generates the multiplicative group.
class Gf2m {
 public:
  static const Gf2m& get(int m);

  int degree() const { return m_; }
  unsigned size() const { return 1u << m_; }
  /// Modulus including the leading x^m term.
  unsigned modulus() const { return modulus_; }

  static GfElem add(GfElem a, GfElem b) { return a ^ b; }
  GfElem mul(GfElem a, GfElem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  GfElem inv(GfElem a) const;
  GfElem pow(GfElem a, unsigned e) const;
  /// Multiplicative generator (x, or 1 when m = 1).
  GfElem generator() const { return m_ == 1 ? 1 : 2; }
  bool contains(unsigned v) const { return v < size(); }

 private:
  explicit Gf2m(int m);

  int m_;
  unsigned modulus_;
  std::array<GfElem, 512> exp_{};
  std::array<int, 256> log_{};
};

/// Scalar value type carrying its field, for the few places where mixed-field
/// arithmetic has to be rejected at runtime.
class FieldElem {
 public:
  FieldElem(int m, unsigned bits);

  int degree() const { return m_; }
  GfElem bits() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem inverse() const;
  bool operator==(const FieldElem& o) const = default;

  std::string to_string() const;

 private:
  void check_same(const FieldElem& o) const;

  int m_;
  GfElem v_;
};

}  // namespace endolift
