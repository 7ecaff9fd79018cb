#pragma once

// Word-packed GF(2) matrices and the hot kernels built on them.
//
// Every kernel comes in two flavours: a plain serial reference (`*_serial`)
// and the default entry point, which splits row work across OpenMP threads
// once the matrix is large enough to amortise the fork. The serial versions
// are kept for the test-suite oracles and the benchmark target.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace endolift::gf2 {

inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Row-major bit matrix; bit j of row i lives in word j/64, bit j%64.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t i, std::size_t j) const {
    return (words_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    auto& w = words_[i * stride_ + j / kWordBits];
    const std::uint64_t bit = std::uint64_t{1} << (j % kWordBits);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t i, std::size_t j) {
    words_[i * stride_ + j / kWordBits] ^= std::uint64_t{1} << (j % kWordBits);
  }

  std::span<std::uint64_t> row(std::size_t i) { return {words_.data() + i * stride_, stride_}; }
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {words_.data() + i * stride_, stride_};
  }
  std::uint64_t* data() { return words_.data(); }
  const std::uint64_t* data() const { return words_.data(); }

  bool is_zero() const;
  bool operator==(const BitMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// dst ^= src over the first `n` words.
void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);

BitMatrix add(const BitMatrix& a, const BitMatrix& b);
BitMatrix transpose(const BitMatrix& a);
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

BitMatrix mul_serial(const BitMatrix& a, const BitMatrix& b);
BitMatrix mul(const BitMatrix& a, const BitMatrix& b);

/// y = A x for a packed column vector x of length a.cols().
std::vector<std::uint64_t> mat_vec(const BitMatrix& a, std::span<const std::uint64_t> x);

/// In-place reduced row echelon form. Returns the pivot columns in order.
/// Only columns < `col_limit` are eligible as pivots (default: all).
std::vector<std::size_t> rref_serial(BitMatrix& a, std::size_t col_limit = SIZE_MAX);
std::vector<std::size_t> rref(BitMatrix& a, std::size_t col_limit = SIZE_MAX);

std::size_t rank(BitMatrix a);

}  // namespace endolift::gf2
