#include "endolift/fmatrix.hpp"

#include <algorithm>
#include <utility>

#include "endolift/error.hpp"

namespace endolift {

FMatrix::FMatrix(int m, std::size_t rows, std::size_t cols) : m_(m), rows_(rows), cols_(cols) {
  Gf2m::get(m);  // validates m
  if (m == 1) {
    bits_ = gf2::BitMatrix(rows, cols);
  } else {
    bytes_.assign(rows * cols, 0);
  }
}

FMatrix FMatrix::identity(int m, std::size_t n) {
  FMatrix a(m, n, n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, 1);
  return a;
}

FMatrix FMatrix::from_rows(int m, const std::vector<std::vector<unsigned>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  const auto& f = Gf2m::get(m);
  FMatrix a(m, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (!f.contains(rows[i][j])) throw RingMismatch("entry does not fit GF(2^m)");
      a.set(i, j, static_cast<GfElem>(rows[i][j]));
    }
  }
  return a;
}

FMatrix FMatrix::from_bits(gf2::BitMatrix bits) {
  FMatrix a;
  a.m_ = 1;
  a.rows_ = bits.rows();
  a.cols_ = bits.cols();
  a.bits_ = std::move(bits);
  return a;
}

FMatrix FMatrix::unit(int m, std::size_t n, std::size_t i) {
  FMatrix v(m, n, 1);
  v.set(i, 0, 1);
  return v;
}

GfElem FMatrix::get(std::size_t i, std::size_t j) const {
  return packed() ? static_cast<GfElem>(bits_.get(i, j)) : bytes_[i * cols_ + j];
}

void FMatrix::set(std::size_t i, std::size_t j, GfElem v) {
  if (packed()) {
    bits_.set(i, j, v != 0);
  } else {
    bytes_[i * cols_ + j] = v;
  }
}

bool FMatrix::is_zero() const {
  if (packed()) return bits_.is_zero();
  return std::all_of(bytes_.begin(), bytes_.end(), [](GfElem v) { return v == 0; });
}

bool FMatrix::is_identity() const {
  if (!is_square()) return false;
  if (packed()) return bits_ == gf2::BitMatrix::identity(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool FMatrix::operator==(const FMatrix& o) const {
  return m_ == o.m_ && rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_ &&
         bytes_ == o.bytes_;
}

void FMatrix::check_same_field(const FMatrix& o) const {
  if (m_ != o.m_) throw RingMismatch("matrices over different fields");
}

FMatrix FMatrix::operator+(const FMatrix& o) const {
  FMatrix c = *this;
  c += o;
  return c;
}

FMatrix& FMatrix::operator+=(const FMatrix& o) {
  check_same_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix add shape");
  if (packed()) {
    const std::size_t n = rows_ * bits_.stride();
    for (std::size_t k = 0; k < n; ++k) bits_.data()[k] ^= o.bits_.data()[k];
  } else {
    for (std::size_t k = 0; k < bytes_.size(); ++k) bytes_[k] ^= o.bytes_[k];
  }
  return *this;
}

FMatrix FMatrix::operator*(const FMatrix& o) const {
  check_same_field(o);
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape");
  if (packed()) return from_bits(gf2::mul(bits_, o.bits_));
  const auto& f = Gf2m::get(m_);
  FMatrix c(m_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const GfElem a = bytes_[i * cols_ + k];
      if (a == 0) continue;
      const GfElem* brow = &o.bytes_[k * o.cols_];
      GfElem* crow = &c.bytes_[i * o.cols_];
      for (std::size_t j = 0; j < o.cols_; ++j) crow[j] ^= f.mul(a, brow[j]);
    }
  }
  return c;
}

FMatrix FMatrix::scaled(GfElem c) const {
  if (c == 1) return *this;
  if (c == 0) return FMatrix(m_, rows_, cols_);
  const auto& f = Gf2m::get(m_);
  FMatrix r = *this;
  for (auto& v : r.bytes_) v = f.mul(v, c);
  return r;
}

FMatrix FMatrix::transpose() const {
  if (packed()) return from_bits(gf2::transpose(bits_));
  FMatrix t(m_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.bytes_[j * rows_ + i] = bytes_[i * cols_ + j];
  return t;
}

FMatrix FMatrix::pow(std::uint64_t e) const {
  if (!is_square()) throw DimensionMismatch("power of a non-square matrix");
  FMatrix result = identity(m_, rows_);
  FMatrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FMatrix FMatrix::column(std::size_t j) const {
  FMatrix v(m_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) v.set(i, 0, get(i, j));
  return v;
}

FMatrix FMatrix::select_rows(std::span<const std::size_t> idx) const {
  FMatrix r(m_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (packed()) {
      auto src = bits_.row(idx[k]);
      std::copy(src.begin(), src.end(), r.bits_.row(k).begin());
    } else {
      std::copy_n(&bytes_[idx[k] * cols_], cols_, &r.bytes_[k * cols_]);
    }
  }
  return r;
}

FMatrix FMatrix::select_cols(std::span<const std::size_t> idx) const {
  FMatrix r(m_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) r.set(i, k, get(i, idx[k]));
  return r;
}

FMatrix FMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  FMatrix b(m_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.set(i, j, get(r0 + i, c0 + j));
  return b;
}

void FMatrix::set_block(std::size_t r0, std::size_t c0, const FMatrix& b) {
  check_same_field(b);
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("block out of range");
  if (packed() && c0 % gf2::kWordBits == 0) {
    for (std::size_t i = 0; i < b.rows_; ++i) {
      auto src = b.bits_.row(i);
      auto dst = bits_.row(r0 + i).subspan(c0 / gf2::kWordBits);
      const std::size_t full = b.cols_ / gf2::kWordBits;
      std::copy_n(src.begin(), full, dst.begin());
      for (std::size_t j = full * gf2::kWordBits; j < b.cols_; ++j)
        bits_.set(r0 + i, c0 + j, b.bits_.get(i, j));
    }
    return;
  }
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) set(r0 + i, c0 + j, b.get(i, j));
}

FMatrix FMatrix::extend_scalars(int m2) const {
  if (m2 == m_) return *this;
  if (m_ != 1) throw RingMismatch("only GF(2)-matrices can be extended to GF(2^m)");
  FMatrix r(m2, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.set(i, j, get(i, j));
  return r;
}

FMatrix hcat(const FMatrix& a, const FMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hcat rows");
  FMatrix c(a.degree(), a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

FMatrix vcat(const FMatrix& a, const FMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vcat cols");
  FMatrix c(a.degree(), a.rows() + b.rows(), a.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

FMatrix block_diag(const FMatrix& a, const FMatrix& b) {
  FMatrix c(a.degree(), a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

FMatrix kron(const FMatrix& a, const FMatrix& b) {
  if (a.degree() != b.degree()) throw RingMismatch("kron over different fields");
  if (a.packed()) return FMatrix::from_bits(gf2::kron(a.bits(), b.bits()));
  const auto& f = Gf2m::get(a.degree());
  FMatrix k(a.degree(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const GfElem x = a.get(i, j);
      if (!x) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k.set(i * b.rows() + p, j * b.cols() + q, f.mul(x, b.get(p, q)));
    }
  return k;
}

namespace {

std::vector<std::size_t> rref_bytes(FMatrix& a, std::size_t col_limit) {
  const auto& f = Gf2m::get(a.degree());
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.rows();
  const std::size_t cols = std::min(a.cols(), col_limit);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a.get(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const GfElem t = a.get(p, j);
        a.set(p, j, a.get(r, j));
        a.set(r, j, t);
      }
    const GfElem inv = f.inv(a.get(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a.set(r, j, f.mul(a.get(r, j), inv));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const GfElem x = a.get(i, c);
      if (!x) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a.set(i, j, a.get(i, j) ^ f.mul(x, a.get(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon rref(FMatrix a, std::size_t col_limit) {
  Echelon e;
  if (a.packed()) {
    e.pivots = gf2::rref(a.bits(), col_limit);
  } else {
    e.pivots = rref_bytes(a, col_limit);
  }
  e.reduced = std::move(a);
  return e;
}

std::size_t rank(const FMatrix& a) { return rref(a).rank(); }

bool is_invertible(const FMatrix& a) { return a.is_square() && rank(a) == a.rows(); }

std::optional<FMatrix> inverse(const FMatrix& a) {
  if (!a.is_square()) return std::nullopt;
  const std::size_t n = a.rows();
  auto e = rref(hcat(a, FMatrix::identity(a.degree(), n)), n);
  if (e.rank() != n) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

FMatrix kernel_basis(const FMatrix& a) {
  const auto e = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  FMatrix k(a.degree(), n, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const std::size_t fc = free_cols[f];
    k.set(fc, f, 1);
    // Characteristic 2: -x = x.
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const GfElem v = e.reduced.get(r, fc);
      if (v) k.set(e.pivots[r], f, v);
    }
  }
  return k;
}

std::vector<std::size_t> independent_columns(const FMatrix& a) { return rref(a).pivots; }

FMatrix column_space_basis(const FMatrix& a) {
  const auto idx = independent_columns(a);
  return a.select_cols(idx);
}

std::optional<FMatrix> solve(const FMatrix& a, const FMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row counts differ");
  if (a.degree() != b.degree()) throw RingMismatch("solve: fields differ");
  const std::size_t n = a.cols();
  auto e = rref(hcat(a, b), n);
  const std::size_t r = e.rank();
  // Any nonzero right-hand entry below the pivots means inconsistency.
  for (std::size_t i = r; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (e.reduced.get(i, n + j)) return std::nullopt;
  FMatrix x(a.degree(), n, b.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(e.pivots[i], j, e.reduced.get(i, n + j));
  return x;
}

std::optional<LinearSolution> solve_linear(const FMatrix& a, const FMatrix& b) {
  if (b.cols() != 1) throw DimensionMismatch("solve_linear expects a single column");
  auto x = solve(a, b);
  if (!x) return std::nullopt;
  return LinearSolution{std::move(*x), kernel_basis(a)};
}

FMatrix vectorize(const FMatrix& a) {
  FMatrix v(a.degree(), a.rows() * a.cols(), 1);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) v.set(j * a.rows() + i, 0, a.get(i, j));
  return v;
}

FMatrix unvectorize(const FMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.rows() != rows * cols || v.cols() != 1) throw DimensionMismatch("unvectorize shape");
  FMatrix a(v.degree(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a.set(i, j, v.get(j * rows + i, 0));
  return a;
}

}  // namespace endolift
