#include "endolift/field.hpp"

#include <memory>
#include <mutex>

#include "endolift/error.hpp"

namespace endolift {

namespace {

// Conway polynomials over GF(2), bit i = coefficient of x^i.
constexpr std::array<unsigned, 9> kConway = {
    0,      // unused
    0x3,    // x + 1
    0x7,    // x^2 + x + 1
    0xB,    // x^3 + x + 1
    0x13,   // x^4 + x + 1
    0x25,   // x^5 + x^2 + 1
    0x5B,   // x^6 + x^4 + x^3 + x + 1
    0x83,   // x^7 + x + 1
    0x11D,  // x^8 + x^4 + x^3 + x^2 + 1
};

}  // namespace

Gf2m::Gf2m(int m) : m_(m), modulus_(kConway[static_cast<std::size_t>(m)]) {
  const unsigned order = (1u << m) - 1;
  if (m == 1) {
    exp_.fill(1);
    log_.fill(0);
    return;
  }
  unsigned x = 1;
  for (unsigned i = 0; i < order; ++i) {
    exp_[i] = static_cast<GfElem>(x);
    log_[x] = static_cast<int>(i);
    x <<= 1;
    if (x & (1u << m)) x ^= modulus_;
  }
  for (unsigned i = order; i < exp_.size(); ++i) exp_[i] = exp_[i % order];
}

const Gf2m& Gf2m::get(int m) {
  if (m < 1 || m > kMaxFieldDegree) throw RingMismatch("field degree must be in [1, 8]");
  static std::array<std::unique_ptr<Gf2m>, 9> table;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int k = 1; k <= kMaxFieldDegree; ++k) table[static_cast<std::size_t>(k)].reset(new Gf2m(k));
  });
  return *table[static_cast<std::size_t>(m)];
}

GfElem Gf2m::inv(GfElem a) const {
  if (a == 0) throw Error("inverse of zero in GF(2^m)");
  const int order = (1 << m_) - 1;
  if (m_ == 1) return 1;
  return exp_[static_cast<std::size_t>((order - log_[a]) % order)];
}

GfElem Gf2m::pow(GfElem a, unsigned e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (m_ == 1) return 1;
  const unsigned order = (1u << m_) - 1;
  return exp_[(static_cast<unsigned>(log_[a]) * (e % order)) % order];
}

FieldElem::FieldElem(int m, unsigned bits) : m_(m), v_(static_cast<GfElem>(bits)) {
  if (!Gf2m::get(m).contains(bits)) throw RingMismatch("element does not fit GF(2^m)");
}

void FieldElem::check_same(const FieldElem& o) const {
  if (m_ != o.m_) throw RingMismatch("mixed GF(2^m) degrees");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  return {m_, static_cast<unsigned>(v_ ^ o.v_)};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  return {m_, Gf2m::get(m_).mul(v_, o.v_)};
}

FieldElem FieldElem::inverse() const { return {m_, Gf2m::get(m_).inv(v_)}; }

std::string FieldElem::to_string() const {
  return "GF(2^" + std::to_string(m_) + "):" + std::to_string(v_);
}

}  // namespace endolift
