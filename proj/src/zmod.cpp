#include "endolift/zmod.hpp"

#include <bit>
#include <utility>

#include "endolift/error.hpp"

namespace endolift {

std::uint64_t level_mask(int n) {
  if (n < 1 || n > kMaxZmodLevel) throw RingMismatch("Z/2^n level must be in [1, 62]");
  return (std::uint64_t{1} << n) - 1;
}

std::uint64_t odd_inverse(std::uint64_t a, int n) {
  if (!(a & 1u)) throw Error("inverse of an even residue");
  // x <- x(2 - a x) doubles the number of correct bits each round.
  std::uint64_t x = a;
  for (int i = 0; i < 6; ++i) x *= 2 - a * x;
  return x & level_mask(n);
}

int valuation2(std::uint64_t v, int n) {
  v &= level_mask(n);
  return v == 0 ? n : std::countr_zero(v);
}

ZmodElem::ZmodElem(int n, std::int64_t value)
    : n_(n), v_(static_cast<std::uint64_t>(value) & level_mask(n)) {}

int ZmodElem::valuation() const { return valuation2(v_, n_); }

ZmodElem ZmodElem::operator+(const ZmodElem& o) const {
  if (n_ != o.n_) throw RingMismatch("mixed Z/2^n levels");
  return {n_, static_cast<std::int64_t>(v_ + o.v_)};
}

ZmodElem ZmodElem::operator-(const ZmodElem& o) const {
  if (n_ != o.n_) throw RingMismatch("mixed Z/2^n levels");
  return {n_, static_cast<std::int64_t>(v_ - o.v_)};
}

ZmodElem ZmodElem::operator*(const ZmodElem& o) const {
  if (n_ != o.n_) throw RingMismatch("mixed Z/2^n levels");
  return {n_, static_cast<std::int64_t>(v_ * o.v_)};
}

ZmodElem ZmodElem::operator-() const { return {n_, -static_cast<std::int64_t>(v_)}; }

ZmodElem ZmodElem::inverse() const {
  return {n_, static_cast<std::int64_t>(odd_inverse(v_, n_))};
}

ZmodElem ZmodElem::reduce(int n2) const {
  if (n2 > n_) throw RingMismatch("reduction to a higher level");
  return {n2, static_cast<std::int64_t>(v_)};
}

ZMatrix::ZMatrix(int n, std::size_t rows, std::size_t cols)
    : n_(n), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  level_mask(n);
}

ZMatrix ZMatrix::identity(int n, std::size_t size) {
  ZMatrix z(n, size, size);
  for (std::size_t i = 0; i < size; ++i) z.set(i, i, 1);
  return z;
}

ZMatrix ZMatrix::lift(const FMatrix& a, int n) {
  if (a.degree() != 1) throw RingMismatch("only GF(2)-matrices lift to Z/2^n");
  ZMatrix z(n, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) z.set(i, j, a.get(i, j));
  return z;
}

ZMatrix ZMatrix::from_rows(int n, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  ZMatrix z(n, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) z.set(i, j, rows[i][j]);
  }
  return z;
}

void ZMatrix::set(std::size_t i, std::size_t j, std::int64_t v) {
  a_[i * cols_ + j] = static_cast<std::uint64_t>(v) & level_mask(n_);
}

void ZMatrix::check(const ZMatrix& o) const {
  if (n_ != o.n_) throw RingMismatch("mixed Z/2^n levels");
}

ZMatrix ZMatrix::operator+(const ZMatrix& o) const {
  check(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("zmatrix add shape");
  ZMatrix c = *this;
  const auto mask = level_mask(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = (a_[k] + o.a_[k]) & mask;
  return c;
}

ZMatrix ZMatrix::operator-(const ZMatrix& o) const {
  check(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("zmatrix sub shape");
  ZMatrix c = *this;
  const auto mask = level_mask(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = (a_[k] - o.a_[k]) & mask;
  return c;
}

ZMatrix ZMatrix::operator*(const ZMatrix& o) const {
  check(o);
  if (cols_ != o.rows_) throw DimensionMismatch("zmatrix product shape");
  ZMatrix c(n_, rows_, o.cols_);
  const auto mask = level_mask(n_);
  // Wrapping uint64 arithmetic is exact modulo 2^64, hence modulo 2^n.
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t x = a_[i * cols_ + k];
      if (!x) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) c.a_[i * o.cols_ + j] += x * o.a_[k * o.cols_ + j];
    }
  for (auto& v : c.a_) v &= mask;
  return c;
}

ZMatrix ZMatrix::scaled(std::uint64_t s) const {
  ZMatrix c = *this;
  const auto mask = level_mask(n_);
  for (auto& v : c.a_) v = (v * s) & mask;
  return c;
}

ZMatrix ZMatrix::pow(std::uint64_t e) const {
  if (rows_ != cols_) throw DimensionMismatch("power of a non-square matrix");
  ZMatrix result = identity(n_, rows_);
  ZMatrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool ZMatrix::is_zero() const {
  for (auto v : a_)
    if (v) return false;
  return true;
}

std::uint64_t ZMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += get(i, i);
  return t & level_mask(n_);
}

ZMatrix ZMatrix::reduce(int n2) const {
  if (n2 > n_) throw RingMismatch("reduction to a higher level");
  ZMatrix z(n2, rows_, cols_);
  const auto mask = level_mask(n2);
  for (std::size_t k = 0; k < a_.size(); ++k) z.a_[k] = a_[k] & mask;
  return z;
}

ZMatrix ZMatrix::widen(int n2) const {
  if (n2 < n_) throw RingMismatch("widen to a lower level");
  ZMatrix z(n2, rows_, cols_);
  z.a_ = a_;
  return z;
}

FMatrix ZMatrix::mod2() const {
  FMatrix f(1, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) f.set(i, j, static_cast<GfElem>(get(i, j) & 1u));
  return f;
}

FMatrix ZMatrix::divide_pow2_mod2(int k) const {
  FMatrix f(1, rows_, cols_);
  const std::uint64_t low = (std::uint64_t{1} << k) - 1;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const std::uint64_t v = get(i, j);
      if (v & low) throw Error("entry not divisible by the requested power of 2");
      f.set(i, j, static_cast<GfElem>((v >> k) & 1u));
    }
  return f;
}

std::optional<ZSolution> solve_linear_mod2n(const ZMatrix& a, const std::vector<std::uint64_t>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_linear_mod2n: rhs length");
  const int n = a.level();
  const auto mask = level_mask(n);
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();

  std::vector<std::vector<std::uint64_t>> w(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) w[i][j] = a.get(i, j);
  std::vector<std::uint64_t> rhs(b);
  for (auto& v : rhs) v &= mask;
  // Column operations are accumulated in q so that x = q y.
  std::vector<std::vector<std::uint64_t>> q(cols, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) q[j][j] = 1;

  std::vector<int> vals;
  std::size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    int best = n;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = k; i < rows && best > 0; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const int v = valuation2(w[i][j], n);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (best == n) break;
    std::swap(w[k], w[bi]);
    std::swap(rhs[k], rhs[bi]);
    if (bj != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(w[i][k], w[i][bj]);
      for (std::size_t i = 0; i < cols; ++i) std::swap(q[i][k], q[i][bj]);
    }
    const std::uint64_t unit = w[k][k] >> best;
    const std::uint64_t uinv = odd_inverse(unit, n);
    for (std::size_t j = 0; j < cols; ++j) w[k][j] = (w[k][j] * uinv) & mask;
    rhs[k] = (rhs[k] * uinv) & mask;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == k || w[i][k] == 0) continue;
      const std::uint64_t f = w[i][k] >> best;
      for (std::size_t j = 0; j < cols; ++j) w[i][j] = (w[i][j] - f * w[k][j]) & mask;
      rhs[i] = (rhs[i] - f * rhs[k]) & mask;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (j == k || w[k][j] == 0) continue;
      const std::uint64_t f = w[k][j] >> best;
      for (std::size_t i = 0; i < rows; ++i) w[i][j] = (w[i][j] - f * w[i][k]) & mask;
      for (std::size_t i = 0; i < cols; ++i) q[i][j] = (q[i][j] - f * q[i][k]) & mask;
    }
    vals.push_back(best);
  }
  const std::size_t rnk = vals.size();

  for (std::size_t i = rnk; i < rows; ++i)
    if (rhs[i]) return std::nullopt;
  std::vector<std::uint64_t> y(cols, 0);
  std::vector<std::vector<std::uint64_t>> ykernel;
  ZSolution sol;
  for (std::size_t i = 0; i < rnk; ++i) {
    const int v = vals[i];
    if (valuation2(rhs[i], n) < v) return std::nullopt;
    y[i] = rhs[i] >> v;
    if (v > 0) {
      std::vector<std::uint64_t> g(cols, 0);
      g[i] = (std::uint64_t{1} << (n - v)) & mask;
      ykernel.push_back(std::move(g));
    }
    sol.log2_count += static_cast<std::uint64_t>(v);
  }
  for (std::size_t j = rnk; j < cols; ++j) {
    std::vector<std::uint64_t> g(cols, 0);
    g[j] = 1;
    ykernel.push_back(std::move(g));
    sol.log2_count += static_cast<std::uint64_t>(n);
  }
  auto apply_q = [&](const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> x(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols; ++j) acc += q[i][j] * v[j];
      x[i] = acc & mask;
    }
    return x;
  };
  sol.particular = apply_q(y);
  for (const auto& g : ykernel) sol.kernel.push_back(apply_q(g));
  return sol;
}

}  // namespace endolift
