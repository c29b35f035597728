#pragma once

#include <cstdint>
#include <vector>

namespace cdc {

// Arithmetic context for the finite field GF(q), q = p^e a prime power.
//
// Elements are encoded as the integers 0..q-1: the base-p digits of the
// integer are the coefficients of the residue polynomial, least significant
// digit = constant term. Arithmetic is table driven; the modulus is the
// lexicographically smallest monic irreducible polynomial of degree e over
// GF(p), where polynomials are ordered by their integer encoding
// sum_i c_i p^i of the non-leading coefficients. For e == 1 arithmetic is
// plain arithmetic mod p.
//
// Contexts are immutable after construction, validated exhaustively against
// the field axioms, and shared via get(); Mat and all code types hold
// pointers into this registry.
class FieldContext {
 public:
  // Returns the shared context for GF(q). Throws std::invalid_argument if q
  // is not a prime power or exceeds the supported table size.
  static const FieldContext& get(int q);

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int extension_degree() const { return e_; }

  // Monic modulus used for the representation, lowest coefficient first,
  // size e+1 (for e == 1 this is {0,1}, i.e. the polynomial x).
  const std::vector<uint8_t>& modulus() const { return modulus_; }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const;  // throws std::domain_error for a == 0

  bool operator==(const FieldContext& o) const { return this == &o; }

 private:
  explicit FieldContext(int q);
  void validate_axioms() const;

  int q_, p_, e_;
  std::vector<uint8_t> modulus_;
  std::vector<uint8_t> add_, mul_, neg_, inv_;
};

}  // namespace cdc
