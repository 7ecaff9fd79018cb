#include "endolift/gf2_kernels.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "endolift/error.hpp"

namespace endolift::gf2 {

namespace {

// Below this many rows the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelRows = 192;

}  // namespace

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool BitMatrix::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  const std::size_t n = std::min(dst.size(), src.size());
  for (std::size_t k = 0; k < n; ++k) dst[k] ^= src[k];
}

BitMatrix add(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("gf2::add shape");
  BitMatrix c = a;
  const std::size_t n = a.rows() * a.stride();
  for (std::size_t k = 0; k < n; ++k) c.data()[k] ^= b.data()[k];
  return c;
}

BitMatrix transpose(const BitMatrix& a) {
  BitMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t w = 0; w < r.size(); ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        t.set(w * kWordBits + static_cast<std::size_t>(b), i, true);
      }
    }
  }
  return t;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  const std::size_t bc = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.get(i, j)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p) {
        auto src = b.row(p);
        const std::size_t out_row = i * b.rows() + p;
        for (std::size_t w = 0; w < src.size(); ++w) {
          std::uint64_t bits = src[w];
          while (bits) {
            const int t = std::countr_zero(bits);
            bits &= bits - 1;
            k.set(out_row, j * bc + w * kWordBits + static_cast<std::size_t>(t), true);
          }
        }
      }
    }
  }
  return k;
}

namespace {

// C row i = XOR of the rows of B selected by the set bits of A row i.
inline void mul_row(const BitMatrix& a, const BitMatrix& b, BitMatrix& c, std::size_t i) {
  auto out = c.row(i);
  auto ar = a.row(i);
  for (std::size_t w = 0; w < ar.size(); ++w) {
    std::uint64_t bits = ar[w];
    while (bits) {
      const int t = std::countr_zero(bits);
      bits &= bits - 1;
      xor_into(out, b.row(w * kWordBits + static_cast<std::size_t>(t)));
    }
  }
}

}  // namespace

BitMatrix mul_serial(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("gf2::mul shape");
  BitMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) mul_row(a, b, c, i);
  return c;
}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("gf2::mul shape");
  if (a.rows() < kParallelRows) return mul_serial(a, b);
  BitMatrix c(a.rows(), b.cols());
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) mul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

std::vector<std::uint64_t> mat_vec(const BitMatrix& a, std::span<const std::uint64_t> x) {
  std::vector<std::uint64_t> y(words_for(a.rows()), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < r.size(); ++w) acc ^= r[w] & x[w];
    if (std::popcount(acc) & 1) y[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  }
  return y;
}

namespace {

template <bool Parallel>
std::vector<std::size_t> rref_impl(BitMatrix& a, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.rows();
  const std::size_t cols = std::min(a.cols(), col_limit);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && !a.get(p, c)) ++p;
    if (p == rows) continue;
    if (p != r) {
      auto rp = a.row(p);
      auto rr = a.row(r);
      std::swap_ranges(rp.begin(), rp.end(), rr.begin());
    }
    const std::size_t w0 = c / kWordBits;
    auto piv = a.row(r).subspan(w0);
    auto eliminate = [&](std::size_t i) {
      if (i != r && a.get(i, c)) xor_into(a.row(i).subspan(w0), piv);
    };
    if constexpr (Parallel) {
      if (rows >= kParallelRows) {
        const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) eliminate(static_cast<std::size_t>(i));
      } else {
        for (std::size_t i = 0; i < rows; ++i) eliminate(i);
      }
    } else {
      for (std::size_t i = 0; i < rows; ++i) eliminate(i);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::size_t> rref_serial(BitMatrix& a, std::size_t col_limit) {
  return rref_impl<false>(a, col_limit);
}

std::vector<std::size_t> rref(BitMatrix& a, std::size_t col_limit) {
  return rref_impl<true>(a, col_limit);
}

std::size_t rank(BitMatrix a) { return rref(a).size(); }

}  // namespace endolift::gf2
