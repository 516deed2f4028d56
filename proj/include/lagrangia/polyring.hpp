#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <span>

#include "lagrangia/field.hpp"

namespace lagrangia {

enum class MonOrder { Grevlex, Lex }; // grevlex with x0 > x1 > ... is the default

struct PolyRing {
    Field field;
    uint32_t nvars; // <= 8
    MonOrder order = MonOrder::Grevlex;
};
using Ring = std::shared_ptr<const PolyRing>;

Ring make_ring(Field f, uint32_t nvars, MonOrder order = MonOrder::Grevlex);

struct Monomial {
    std::array<uint8_t, 8> e{};
    uint16_t deg = 0;

    static Monomial one() { return {}; }
    static Monomial var(uint32_t i, uint8_t exp = 1) {
        Monomial m;
        m.e[i] = exp;
        m.deg = exp;
        return m;
    }
    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
};

// negative, zero, positive as the order relation a < b, a == b, a > b
int mono_cmp(const Monomial& a, const Monomial& b, MonOrder ord, uint32_t nvars);
bool mono_divides(const Monomial& a, const Monomial& b); // a | b
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& b, const Monomial& a); // b / a, assumes a | b
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

struct Term {
    Monomial m;
    uint64_t c; // nonzero field encoding
};

// full element map between two finite fields along the canonical embedding
class FieldEmbedding {
  public:
    FieldEmbedding(Field src, Field tgt);
    uint64_t operator()(uint64_t a) const { return map_[a]; }
    const Field& target() const { return tgt_; }

  private:
    Field src_, tgt_;
    std::vector<uint64_t> map_;
};

/// Sparse polynomial with terms strictly decreasing in the ring order.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(Ring r) : r_(std::move(r)) {}
    // terms need not be sorted or combined
    Polynomial(Ring r, std::vector<Term> terms);
    static Polynomial constant(const Ring& r, uint64_t c);
    static Polynomial variable(const Ring& r, uint32_t i);
    static Polynomial monomial(const Ring& r, const Monomial& m, uint64_t c = 1);

    const Ring& ring() const { return r_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    const Term& lead() const;
    int degree() const; // -1 for zero
    bool is_homogeneous() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(uint64_t c) const;
    Polynomial times_term(uint64_t c, const Monomial& m) const;
    bool operator==(const Polynomial& o) const { return t_ == o.t_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    uint64_t coeff(const Monomial& m) const;

    // value at a point; the point lives over emb.target() when emb is given
    uint64_t eval(std::span<const uint64_t> pt, const FieldEmbedding* emb = nullptr) const;
    Polynomial partial(uint32_t var) const;
    // x_i -> sum_j a(i,j) x_j
    Polynomial substitute_linear(const class Matrix& a) const;
    // coefficientwise c -> c^p, exponentwise e -> p*e
    Polynomial frobenius_power() const;

    std::string str() const;
    static Polynomial parse(const Ring& r, const std::string& s);

  private:
    Ring r_;
    std::vector<Term> t_;
    void normalize();
};

inline bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }

// monomials of total degree d, sorted descending in the ring order
std::vector<Monomial> monomials_of_degree(const Ring& r, unsigned d);

/// Ideal with a lazily cached reduced Groebner basis (grevlex default).
class Ideal {
  public:
    Ideal() = default;
    Ideal(Ring r, std::vector<Polynomial> gens);
    const Ring& ring() const { return st_->ring; }
    const std::vector<Polynomial>& gens() const { return st_->gens; }
    // unique reduced basis; computed once, cached, race-benign
    const std::vector<Polynomial>& groebner_basis() const;

  private:
    struct State {
        Ring ring;
        std::vector<Polynomial> gens;
        mutable std::mutex mu;
        mutable std::shared_ptr<const std::vector<Polynomial>> gb;
    };
    std::shared_ptr<State> st_;
};

// no term of the result is divisible by any leading term of g; reduces the
// highest term first, first matching divisor in list order
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> g);

// Buchberger with the product and chain criteria; deterministic pair
// selection (lowest lcm degree, then lexicographic pair index)
std::vector<Polynomial> buchberger(const Ring& r, std::vector<Polynomial> gens);

Ideal groebner(const Ideal& i); // same ideal with the cached reduced basis

// dim_k (R/I)_t by counting standard monomials; homogeneous I, t <= 20
long hilbert_function(const Ideal& i, int t);

bool ideal_contains(const Ideal& i, const Polynomial& f);

} // namespace lagrangia
