#pragma once

// Dense matrices over GF(2^m). GF(2) is stored word-packed and routed to the
// gf2 kernels; larger fields keep one byte per entry.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "endolift/field.hpp"
#include "endolift/gf2_kernels.hpp"

namespace endolift {

class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(int m, std::size_t rows, std::size_t cols);

  static FMatrix identity(int m, std::size_t n);
  static FMatrix from_rows(int m, const std::vector<std::vector<unsigned>>& rows);
  static FMatrix from_bits(gf2::BitMatrix bits);
  /// Column vector e_i of length n.
  static FMatrix unit(int m, std::size_t n, std::size_t i);

  int degree() const { return m_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool packed() const { return m_ == 1; }

  GfElem get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, GfElem v);

  const gf2::BitMatrix& bits() const { return bits_; }
  gf2::BitMatrix& bits() { return bits_; }

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const FMatrix& o) const;

  FMatrix operator+(const FMatrix& o) const;
  FMatrix& operator+=(const FMatrix& o);
  FMatrix operator*(const FMatrix& o) const;
  FMatrix scaled(GfElem c) const;
  FMatrix transpose() const;
  FMatrix pow(std::uint64_t e) const;

  FMatrix column(std::size_t j) const;
  FMatrix select_rows(std::span<const std::size_t> idx) const;
  FMatrix select_cols(std::span<const std::size_t> idx) const;
  FMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const FMatrix& b);

  /// Reinterpret a GF(2)-matrix over GF(2^m2) (0/1 entries embed).
  FMatrix extend_scalars(int m2) const;

 private:
  void check_same_field(const FMatrix& o) const;

  int m_ = 1;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  gf2::BitMatrix bits_;
  std::vector<GfElem> bytes_;
};

FMatrix hcat(const FMatrix& a, const FMatrix& b);
FMatrix vcat(const FMatrix& a, const FMatrix& b);
FMatrix block_diag(const FMatrix& a, const FMatrix& b);
FMatrix kron(const FMatrix& a, const FMatrix& b);

struct Echelon {
  FMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form; pivots are restricted to columns < col_limit.
Echelon rref(FMatrix a, std::size_t col_limit = SIZE_MAX);
std::size_t rank(const FMatrix& a);
bool is_invertible(const FMatrix& a);
std::optional<FMatrix> inverse(const FMatrix& a);

/// Columns form a basis of {v : A v = 0}; cols() == A.cols() - rank(A).
FMatrix kernel_basis(const FMatrix& a);

/// Indices of a maximal independent prefix-greedy set of columns.
std::vector<std::size_t> independent_columns(const FMatrix& a);
FMatrix column_space_basis(const FMatrix& a);

/// One solution X of A X = B, or nullopt when inconsistent.
std::optional<FMatrix> solve(const FMatrix& a, const FMatrix& b);

struct LinearSolution {
  FMatrix particular;  // one solution column
  FMatrix kernel;      // basis of the homogeneous solutions, as columns
};

/// Full solution set of A x = b for a single right-hand side.
std::optional<LinearSolution> solve_linear(const FMatrix& a, const FMatrix& b);

/// Flatten column-major into a column vector; used to compare spans of matrices.
FMatrix vectorize(const FMatrix& a);
FMatrix unvectorize(const FMatrix& v, std::size_t rows, std::size_t cols);

}  // namespace endolift
