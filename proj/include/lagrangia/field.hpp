#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lagrangia/errors.hpp"

namespace lagrangia {

class FieldSpec;

// Shared immutable handle; every element, matrix and polynomial keeps one so
// the spec outlives all values built over it.
using Field = std::shared_ptr<const FieldSpec>;

/// GF(p^k) with a fixed monic irreducible modulus over GF(p).
///
/// Elements are carried around as their integer encoding sum c_i * p^i of the
/// coefficient vector (c_0, ..., c_{k-1}).  For q <= 256 all arithmetic runs
/// off precomputed tables; the coefficient-vector path is kept as the generic
/// fallback and test oracle.
class FieldSpec {
  public:
    // Canonical moduli: GF(4) x^2+x+1, GF(8) x^3+x+1, GF(16) x^4+x+1,
    // GF(32) x^5+x^2+1; degree-1 fields use x.  Anything else must supply a
    // modulus explicitly.
    static Field make(uint32_t p, uint32_t k);
    static Field make(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);

    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const; // DivisionByZero on 0
    uint64_t div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t frobenius(uint64_t a) const { return pow(a, p_); }
    // absolute trace to GF(p), returned as an element of the prime field
    uint64_t trace(uint64_t a) const;

    uint64_t coeff(uint64_t enc, uint32_t i) const; // c_i of the encoding
    uint64_t encode(const std::vector<uint32_t>& coeffs) const;
    std::vector<uint32_t> decode(uint64_t enc) const;

    // "c0+c1*a+..." with all k coefficients listed; bare integer when k == 1.
    std::string to_string(uint64_t enc) const;
    uint64_t parse(const std::string& s) const;

    bool same(const FieldSpec& other) const;

    // Generic-path entry points used by tests as oracles for the table path.
    uint64_t mul_generic(uint64_t a, uint64_t b) const;
    uint64_t inv_generic(uint64_t a) const;

    // Raw q*q multiplication / q inversion tables for hot loops; null when
    // the field is too large to be tabled (q > 256).
    const uint8_t* mul_table_raw() const { return tabled_ ? mul_tab_.data() : nullptr; }
    const uint8_t* inv_table_raw() const { return tabled_ ? inv_tab_.data() : nullptr; }

  private:
    FieldSpec(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);

    uint32_t p_, k_;
    uint64_t q_;
    std::vector<uint32_t> modulus_; // length k+1, monic
    bool tabled_;
    std::vector<uint8_t> mul_tab_;  // q*q when tabled
    std::vector<uint8_t> inv_tab_;  // q when tabled
};

/// Field element: value plus owning field handle.
class FE {
  public:
    FE() : v_(0) {}
    FE(Field f, uint64_t enc) : f_(std::move(f)), v_(enc) {}

    const Field& field() const { return f_; }
    uint64_t enc() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    FE operator+(const FE& o) const { return FE(f_, chk(o)->add(v_, o.v_)); }
    FE operator-(const FE& o) const { return FE(f_, chk(o)->sub(v_, o.v_)); }
    FE operator*(const FE& o) const { return FE(f_, chk(o)->mul(v_, o.v_)); }
    FE operator-() const { return FE(f_, f_->neg(v_)); }
    FE inverse() const { return FE(f_, f_->inv(v_)); }
    bool operator==(const FE& o) const { return f_->same(*o.f_) && v_ == o.v_; }
    bool operator!=(const FE& o) const { return !(*this == o); }

    std::string str() const { return f_->to_string(v_); }

  private:
    const FieldSpec* chk(const FE& o) const {
        require(f_ && o.f_ && f_->same(*o.f_), Err::IncompatibleFields,
                "field elements from different fields");
        return f_.get();
    }
    Field f_;
    uint64_t v_;
};

// Embedding GF(p^j) -> GF(p^k), j | k, both on the canonical modulus tower.
// The image of the source generator is the smallest root (in encoding order)
// of the source modulus in the target field.
uint64_t embed(const FieldSpec& src, uint64_t a, const FieldSpec& tgt);
FE embed(const FE& a, const Field& tgt);
// Images of 1, a, a^2, ..., a^{j-1}; hot loops precompute this once.
std::vector<uint64_t> embedding_basis(const FieldSpec& src, const FieldSpec& tgt);

} // namespace lagrangia
