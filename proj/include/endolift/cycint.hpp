#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace endolift {

/// Element of Z[x]/(x^M + 1), M = 2^(d-2), with x standing for a primitive
/// 2^(d-1)-th root of unity zeta.
class CycInt {
 public:
  CycInt() = default;
  explicit CycInt(int d);
  CycInt(int d, std::int64_t integer);

  static CycInt zeta_power(int d, std::int64_t k);

  int group_parameter() const { return d_; }
  std::size_t degree() const { return c_.size(); }
  std::int64_t coeff(std::size_t i) const { return c_[i]; }
  void set_coeff(std::size_t i, std::int64_t v) { c_[i] = v; }

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;
  CycInt operator-() const;
  CycInt& operator+=(const CycInt& o);
  CycInt scaled(std::int64_t s) const;
  bool operator==(const CycInt& o) const = default;

  /// Complex conjugation zeta -> zeta^-1.
  CycInt conj() const;
  bool is_rational() const;
  std::optional<std::int64_t> as_integer() const;
  bool is_zero() const;

  std::string to_string() const;

 private:
  void check(const CycInt& o) const;

  int d_ = 3;
  std::vector<std::int64_t> c_;
};

/// Trace down to Z: sum of all Galois conjugates, i.e. M * (coefficient of x^0).
std::int64_t cyc_trace(const CycInt& z);

/// Schoolbook product of the two coefficient vectors followed by x^M -> -1.
/// Kept separate from operator* as an oracle.
CycInt cyc_mul_naive(const CycInt& a, const CycInt& b);

}  // namespace endolift
