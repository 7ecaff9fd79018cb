#include "endolift/cycint.hpp"

#include <algorithm>

#include "endolift/error.hpp"

namespace endolift {

namespace {

std::size_t half_order(int d) {
  if (d < 3 || d > 20) throw RingMismatch("cyclotomic ring needs 3 <= d <= 20");
  return std::size_t{1} << (d - 2);
}

}  // namespace

CycInt::CycInt(int d) : d_(d), c_(half_order(d), 0) {}

CycInt::CycInt(int d, std::int64_t integer) : CycInt(d) { c_[0] = integer; }

CycInt CycInt::zeta_power(int d, std::int64_t k) {
  CycInt z(d);
  const auto m = static_cast<std::int64_t>(z.degree());
  std::int64_t e = k % (2 * m);
  if (e < 0) e += 2 * m;
  if (e < m) {
    z.c_[static_cast<std::size_t>(e)] = 1;
  } else {
    z.c_[static_cast<std::size_t>(e - m)] = -1;
  }
  return z;
}

void CycInt::check(const CycInt& o) const {
  if (d_ != o.d_) throw RingMismatch("cyclotomic rings differ");
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt r = *this;
  r += o;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  check(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycInt CycInt::operator-(const CycInt& o) const { return *this + (-o); }

CycInt CycInt::operator-() const { return scaled(-1); }

CycInt CycInt::scaled(std::int64_t s) const {
  CycInt r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
  check(o);
  const std::size_t m = c_.size();
  CycInt r(d_);
  for (std::size_t i = 0; i < m; ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t p = c_[i] * o.c_[j];
      const std::size_t k = i + j;
      if (k < m) {
        r.c_[k] += p;
      } else {
        r.c_[k - m] -= p;
      }
    }
  }
  return r;
}

CycInt CycInt::conj() const {
  // x^k -> x^-k = -x^(M-k) for 0 < k < M.
  CycInt r(d_);
  const std::size_t m = c_.size();
  r.c_[0] = c_[0];
  for (std::size_t k = 1; k < m; ++k) r.c_[m - k] = -c_[k];
  return r;
}

bool CycInt::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t v) { return v == 0; });
}

std::optional<std::int64_t> CycInt::as_integer() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

bool CycInt::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

std::string CycInt::to_string() const {
  if (auto v = as_integer()) return std::to_string(*v);
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k]) continue;
    if (!s.empty()) s += c_[k] > 0 ? "+" : "";
    s += std::to_string(c_[k]);
    if (k) s += "z^" + std::to_string(k);
  }
  return s;
}

std::int64_t cyc_trace(const CycInt& z) {
  return static_cast<std::int64_t>(z.degree()) * z.coeff(0);
}

CycInt cyc_mul_naive(const CycInt& a, const CycInt& b) {
  if (a.group_parameter() != b.group_parameter()) throw RingMismatch("cyclotomic rings differ");
  const std::size_t m = a.degree();
  std::vector<std::int64_t> full(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) full[i + j] += a.coeff(i) * b.coeff(j);
  CycInt r(a.group_parameter());
  for (std::size_t k = 0; k < m; ++k) r.set_coeff(k, full[k] - full[k + m]);
  return r;
}

}  // namespace endolift
