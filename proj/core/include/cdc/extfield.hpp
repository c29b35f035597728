#pragma once

#include <cstdint>
#include <vector>

#include "cdc/field.hpp"

namespace cdc {

// Extension field GF(q^m) over a base FieldContext GF(q), q itself possibly a
// prime power. Elements are encoded as integers 0..q^m-1 whose base-q digits
// are the coefficients over the polynomial basis 1, x, ..., x^{m-1}; the
// modulus is the lexicographically smallest monic irreducible of degree m
// over GF(q) (same integer-code order as FieldContext). Arithmetic is
// polynomial arithmetic modulo the modulus; no tables are built, so large m
// stays cheap to construct.
class ExtField {
 public:
  ExtField(const FieldContext& base, int m);

  const FieldContext& base() const { return *base_; }
  int degree() const { return m_; }
  uint64_t order() const { return order_; }  // q^m
  const std::vector<uint8_t>& modulus() const { return modulus_; }

  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t pow(uint64_t a, uint64_t e) const;
  // Frobenius-type power a^(q^i) for the base order q.
  uint64_t pow_q(uint64_t a, int i) const;

  // Class of x; {1, alpha, ..., alpha^{m-1}} is the expansion basis.
  uint64_t alpha() const { return m_ == 1 ? 0 : static_cast<uint64_t>(base_->q()); }

  // Coefficients of the element over the polynomial basis (length m).
  std::vector<uint8_t> expand(uint64_t a) const;
  uint64_t compose(const std::vector<uint8_t>& digits) const;

 private:
  const FieldContext* base_;
  int m_;
  uint64_t order_;
  std::vector<uint8_t> modulus_;
};

// Polynomial utilities over an arbitrary FieldContext (coefficients lowest
// first, normalized with no trailing zeros). Shared by ExtField and tests.
namespace polyq {
std::vector<uint8_t> trim(std::vector<uint8_t> f);
std::vector<uint8_t> mul(const FieldContext& f, const std::vector<uint8_t>& a,
                         const std::vector<uint8_t>& b);
std::vector<uint8_t> mod(const FieldContext& f, std::vector<uint8_t> a,
                         const std::vector<uint8_t>& m);
bool is_irreducible(const FieldContext& f, const std::vector<uint8_t>& poly);
std::vector<uint8_t> smallest_irreducible(const FieldContext& f, int degree);
}  // namespace polyq

}  // namespace cdc
