#include "cdc/extfield.hpp"

#include <stdexcept>

namespace cdc {
namespace polyq {

std::vector<uint8_t> trim(std::vector<uint8_t> f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

std::vector<uint8_t> mul(const FieldContext& f, const std::vector<uint8_t>& a,
                         const std::vector<uint8_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint8_t> h(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) h[i + j] = f.add(h[i + j], f.mul(a[i], b[j]));
  }
  return trim(std::move(h));
}

std::vector<uint8_t> mod(const FieldContext& f, std::vector<uint8_t> a,
                         const std::vector<uint8_t>& m) {
  a = trim(std::move(a));
  const int dm = static_cast<int>(m.size()) - 1;
  if (dm <= 0) throw std::invalid_argument("poly mod: modulus must have positive degree");
  uint8_t lead_inv = f.inv(m.back());
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int shift = static_cast<int>(a.size()) - 1 - dm;
    uint8_t c = f.mul(a.back(), lead_inv);
    for (int i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

bool is_irreducible(const FieldContext& f, const std::vector<uint8_t>& poly) {
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  const int q = f.q();
  for (int d = 1; 2 * d <= deg; ++d) {
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (uint64_t code = 0; code < count; ++code) {
      std::vector<uint8_t> g(d + 1, 0);
      uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<uint8_t>(c % q);
        c /= q;
      }
      g[d] = 1;
      if (mod(f, poly, g).empty()) return false;
    }
  }
  return true;
}

std::vector<uint8_t> smallest_irreducible(const FieldContext& f, int degree) {
  const int q = f.q();
  uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= q;
  for (uint64_t code = 0; code < count; ++code) {
    std::vector<uint8_t> g(degree + 1, 0);
    uint64_t c = code;
    for (int i = 0; i < degree; ++i) {
      g[i] = static_cast<uint8_t>(c % q);
      c /= q;
    }
    g[degree] = 1;
    if (is_irreducible(f, g)) return g;
  }
  throw std::logic_error("no irreducible polynomial found over the base field");
}

}  // namespace polyq

ExtField::ExtField(const FieldContext& base, int m) : base_(&base), m_(m) {
  if (m < 1) throw std::invalid_argument("extension degree must be at least 1");
  order_ = 1;
  for (int i = 0; i < m; ++i) {
    if (order_ > (uint64_t{1} << 60) / base.q())
      throw std::invalid_argument("extension field order too large");
    order_ *= base.q();
  }
  if (m == 1) {
    modulus_ = {0, 1};
  } else {
    modulus_ = polyq::smallest_irreducible(base, m);
  }
}

std::vector<uint8_t> ExtField::expand(uint64_t a) const {
  std::vector<uint8_t> d(m_, 0);
  const int q = base_->q();
  for (int i = 0; i < m_; ++i) {
    d[i] = static_cast<uint8_t>(a % q);
    a /= q;
  }
  return d;
}

uint64_t ExtField::compose(const std::vector<uint8_t>& digits) const {
  uint64_t v = 0;
  for (size_t i = digits.size(); i-- > 0;) v = v * base_->q() + digits[i];
  return v;
}

uint64_t ExtField::add(uint64_t a, uint64_t b) const {
  std::vector<uint8_t> x = expand(a), y = expand(b);
  for (int i = 0; i < m_; ++i) x[i] = base_->add(x[i], y[i]);
  return compose(x);
}

uint64_t ExtField::mul(uint64_t a, uint64_t b) const {
  if (m_ == 1) return base_->mul(static_cast<uint8_t>(a), static_cast<uint8_t>(b));
  std::vector<uint8_t> p =
      polyq::mod(*base_, polyq::mul(*base_, polyq::trim(expand(a)), polyq::trim(expand(b))),
                 modulus_);
  p.resize(m_, 0);
  return compose(p);
}

uint64_t ExtField::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1;
  uint64_t b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

uint64_t ExtField::pow_q(uint64_t a, int i) const {
  uint64_t r = a;
  for (int j = 0; j < i; ++j) r = pow(r, base_->q());
  return r;
}

}  // namespace cdc
