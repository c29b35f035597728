#include "cdc/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace cdc {
namespace {

constexpr int kMaxQ = 81;  // table size guard; the toolkit is exercised for q <= 9

// --- small polynomial helpers over the prime field GF(p), coefficients as
// --- plain ints mod p, lowest coefficient first, no trailing zeros.

using Poly = std::vector<int>;

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_mul(const Poly& f, const Poly& g, int p) {
  if (f.empty() || g.empty()) return {};
  Poly h(f.size() + g.size() - 1, 0);
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + f[i] * g[j]) % p;
  return trim(h);
}

// Remainder of f modulo monic g.
Poly poly_mod(Poly f, const Poly& g, int p) {
  f = trim(f);
  const int dg = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= dg) {
    int shift = static_cast<int>(f.size()) - 1 - dg;
    int c = f.back();
    for (int i = 0; i <= dg; ++i) {
      f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
    }
    f = trim(f);
    if (f.empty()) break;
  }
  return f;
}

// Decodes the integer code of a monic polynomial of the given degree: the
// base-p digits of `code` are the non-leading coefficients.
Poly monic_from_code(long code, int degree, int p) {
  Poly f(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    f[i] = static_cast<int>(code % p);
    code /= p;
  }
  f[degree] = 1;
  return f;
}

bool is_irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; 2 * d <= deg; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
      Poly g = monic_from_code(code, d, p);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Lexicographically smallest monic irreducible of the given degree over
// GF(p), by ascending integer code of the non-leading coefficients.
Poly smallest_irreducible(int degree, int p) {
  long count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (long code = 0; code < count; ++code) {
    Poly f = monic_from_code(code, degree, p);
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

struct Factorization {
  int p, e;
};

Factorization prime_power(int q) {
  if (q < 2) throw std::invalid_argument("field order must be at least 2");
  int n = q;
  int p = 0;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = n;  // q itself prime
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1)
    throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  return {p, e};
}

}  // namespace

FieldContext::FieldContext(int q) : q_(q) {
  if (q > kMaxQ)
    throw std::invalid_argument("field order " + std::to_string(q) + " exceeds table limit");
  auto [p, e] = prime_power(q);
  p_ = p;
  e_ = e;

  Poly mod;
  if (e_ == 1) {
    mod = {0, 1};  // x: arithmetic is plain mod p
  } else {
    mod = smallest_irreducible(e_, p_);
  }
  modulus_.assign(mod.begin(), mod.end());

  auto digits = [&](int a) {
    Poly f;
    while (a) {
      f.push_back(a % p_);
      a /= p_;
    }
    return f;
  };
  auto encode = [&](const Poly& f) {
    int v = 0;
    for (size_t i = f.size(); i-- > 0;) v = v * p_ + f[i];
    return v;
  };

  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      // Digit-wise addition mod p.
      int s = 0, pw = 1, x = a, y = b;
      for (int i = 0; i < e_; ++i) {
        s += ((x % p_) + (y % p_)) % p_ * pw;
        pw *= p_;
        x /= p_;
        y /= p_;
      }
      add_[a * q + b] = static_cast<uint8_t>(s);
      Poly prod = (e_ == 1) ? Poly{(a * b) % p_}
                            : poly_mod(poly_mul(digits(a), digits(b), p_), mod, p_);
      mul_[a * q + b] = static_cast<uint8_t>(encode(trim(prod)));
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b)
      if (add_[a * q + b] == 0) neg_[a] = static_cast<uint8_t>(b);
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<uint8_t>(b);
  }
  validate_axioms();
}

uint8_t FieldContext::inv(uint8_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[a];
}

void FieldContext::validate_axioms() const {
  auto fail = [&](const char* what) {
    throw std::logic_error(std::string("field axiom violated for q=") + std::to_string(q_) +
                           ": " + what);
  };
  const int q = q_;
  for (int a = 0; a < q; ++a) {
    if (add(static_cast<uint8_t>(a), 0) != a) fail("additive identity");
    if (mul(static_cast<uint8_t>(a), 1) != a) fail("multiplicative identity");
    if (add(static_cast<uint8_t>(a), neg_[a]) != 0) fail("additive inverse");
    if (a != 0 && mul(static_cast<uint8_t>(a), inv_[a]) != 1) fail("multiplicative inverse");
    for (int b = 0; b < q; ++b) {
      if (add(a, b) != add(b, a)) fail("addition commutativity");
      if (mul(a, b) != mul(b, a)) fail("multiplication commutativity");
      for (int c = 0; c < q; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) fail("addition associativity");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("multiplication associativity");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("distributivity");
      }
    }
  }
}

const FieldContext& FieldContext::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldContext>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(q);
  if (it == registry.end()) {
    it = registry.emplace(q, std::unique_ptr<FieldContext>(new FieldContext(q))).first;
  }
  return *it->second;
}

}  // namespace cdc
