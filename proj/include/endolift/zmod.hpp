#pragma once

// Arithmetic over the truncated Witt vectors W(GF(2))/2^n = Z/2^n.

#include <cstdint>
#include <optional>
#include <vector>

#include "endolift/fmatrix.hpp"

namespace endolift {

inline constexpr int kMaxZmodLevel = 62;

class ZmodElem {
 public:
  ZmodElem(int n, std::int64_t value);

  int level() const { return n_; }
  std::uint64_t value() const { return v_; }
  /// 2-adic valuation; returns level() for zero.
  int valuation() const;
  bool is_unit() const { return v_ & 1u; }

  ZmodElem operator+(const ZmodElem& o) const;
  ZmodElem operator-(const ZmodElem& o) const;
  ZmodElem operator*(const ZmodElem& o) const;
  ZmodElem operator-() const;
  ZmodElem inverse() const;  // unit only
  ZmodElem reduce(int n2) const;
  bool operator==(const ZmodElem& o) const = default;

 private:
  int n_;
  std::uint64_t v_;
};

std::uint64_t level_mask(int n);
/// Inverse of an odd residue modulo 2^n (Newton iteration).
std::uint64_t odd_inverse(std::uint64_t a, int n);
int valuation2(std::uint64_t v, int n);

class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(int n, std::size_t rows, std::size_t cols);

  static ZMatrix identity(int n, std::size_t size);
  /// Canonical lift of a GF(2)-matrix (entries 0/1) to Z/2^n.
  static ZMatrix lift(const FMatrix& a, int n);
  static ZMatrix from_rows(int n, const std::vector<std::vector<std::int64_t>>& rows);

  int level() const { return n_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t get(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v);

  ZMatrix operator+(const ZMatrix& o) const;
  ZMatrix operator-(const ZMatrix& o) const;
  ZMatrix operator*(const ZMatrix& o) const;
  ZMatrix scaled(std::uint64_t c) const;
  ZMatrix pow(std::uint64_t e) const;
  bool operator==(const ZMatrix& o) const = default;
  bool is_zero() const;

  std::uint64_t trace() const;
  /// Entrywise reduction to Z/2^n2, n2 <= level().
  ZMatrix reduce(int n2) const;
  /// Reinterpret at a higher level using canonical representatives in [0, 2^n).
  ZMatrix widen(int n2) const;
  /// Entrywise reduction mod 2.
  FMatrix mod2() const;
  /// Entries are all divisible by 2^k; returns the quotient mod 2 (as a GF(2) matrix).
  FMatrix divide_pow2_mod2(int k) const;

 private:
  void check(const ZMatrix& o) const;

  int n_ = 1;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> a_;
};

/// Solution set of A x = b over Z/2^n: x = particular + span(kernel generators).
struct ZSolution {
  std::vector<std::uint64_t> particular;
  std::vector<std::vector<std::uint64_t>> kernel;  // generators of the homogeneous module
  /// log2 of the number of solutions.
  std::uint64_t log2_count = 0;
};

/// Exact elimination over the local ring Z/2^n: pivots on the entry of least
/// 2-adic valuation (odd entries first) with row and column operations.
/// Returns nullopt when the system has no solution.
std::optional<ZSolution> solve_linear_mod2n(const ZMatrix& a, const std::vector<std::uint64_t>& b);

}  // namespace endolift
