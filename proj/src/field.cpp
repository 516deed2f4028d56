#include "lagrangia/field.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace lagrangia {

const char* err_name(Err e) {
    switch (e) {
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::IncompatibleFields: return "IncompatibleFields";
        case Err::InvalidField: return "InvalidField";
        case Err::DegreeOverflow: return "DegreeOverflow";
        case Err::OddDegreeWrongCharacteristic: return "OddDegreeWrongCharacteristic";
        case Err::NotComplementary: return "NotComplementary";
        case Err::DegenerateForm: return "DegenerateForm";
        case Err::UnsupportedShape: return "UnsupportedShape";
        case Err::SizeCap: return "SizeCap";
        case Err::NonHomogeneous: return "NonHomogeneous";
        case Err::NonMinimalComplex: return "NonMinimalComplex";
        case Err::NotLiftable: return "NotLiftable";
        case Err::CharZero: return "CharZero";
        case Err::WrongShape: return "WrongShape";
        case Err::DimensionMismatch: return "DimensionMismatch";
        case Err::OddParityViolation: return "OddParityViolation";
        case Err::PointNotOnLocus: return "PointNotOnLocus";
        case Err::NotDivisibleBy4: return "NotDivisibleBy4";
        case Err::Undecidable: return "Undecidable";
        case Err::ParseError: return "ParseError";
    }
    return "Error";
}

namespace {

bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

using Poly = std::vector<uint32_t>; // dense, coefficients in [0,p)

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m over GF(p); m monic
Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
    trim(a);
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        uint32_t lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (size_t i = 0; i <= dm; ++i) {
                uint64_t t = (uint64_t)m[i] * lead % p;
                a[i + shift] = (uint32_t)((a[i + shift] + p - t) % p);
            }
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (uint32_t)((c[i + j] + (uint64_t)a[i] * b[j]) % p);
    }
    return poly_mod(std::move(c), m, p);
}

// exhaustive root/dividend helpers for the irreducibility check
bool divides(const Poly& d, Poly a, uint32_t p) {
    // d monic after normalization
    Poly dn = d;
    uint32_t lead = dn.back();
    if (lead != 1) {
        // normalize by lead^{-1} (Fermat)
        uint32_t li = 1, e = p - 2, base = lead;
        while (e) {
            if (e & 1) li = (uint32_t)((uint64_t)li * base % p);
            base = (uint32_t)((uint64_t)base * base % p);
            e >>= 1;
        }
        for (auto& c : dn) c = (uint32_t)((uint64_t)c * li % p);
    }
    return poly_mod(std::move(a), dn, p).empty();
}

} // namespace

FieldSpec::FieldSpec(uint32_t p, uint32_t k, std::vector<uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    require(is_prime(p) && p <= 251, Err::InvalidField, "characteristic must be prime <= 251");
    require(k >= 1 && k <= 8, Err::InvalidField, "extension degree must be in [1,8]");
    require(modulus_.size() == k + 1, Err::InvalidField, "modulus degree must equal k");
    for (auto& c : modulus_) require(c < p, Err::InvalidField, "modulus coefficients must be reduced mod p");
    require(modulus_.back() == 1, Err::InvalidField, "modulus must be monic");

    q_ = 1;
    for (uint32_t i = 0; i < k; ++i) {
        require(q_ <= (uint64_t)1 << 60, Err::SizeCap, "field too large");
        q_ *= p;
    }

    // brute-force irreducibility: trial division by every monic polynomial of
    // degree 1..k/2 (desk scale keeps the candidate count tiny)
    if (k >= 2) {
        uint64_t candidates = 0;
        for (uint32_t d = 1; 2 * d <= k; ++d) {
            uint64_t n = 1;
            for (uint32_t i = 0; i < d; ++i) n *= p;
            candidates += n;
        }
        require(candidates <= (1u << 20), Err::SizeCap,
                "irreducibility verification cap exceeded; supply a smaller field");
        for (uint32_t d = 1; 2 * d <= k; ++d) {
            uint64_t n = 1;
            for (uint32_t i = 0; i < d; ++i) n *= p;
            for (uint64_t code = 0; code < n; ++code) {
                Poly div(d + 1, 0);
                uint64_t c = code;
                for (uint32_t i = 0; i < d; ++i) {
                    div[i] = (uint32_t)(c % p);
                    c /= p;
                }
                div[d] = 1;
                require(!divides(div, Poly(modulus_.begin(), modulus_.end()), p), Err::InvalidField,
                        "modulus is reducible over GF(p)");
            }
        }
    }

    tabled_ = q_ <= 256;
    if (tabled_) {
        mul_tab_.resize(q_ * q_);
        inv_tab_.assign(q_, 0);
        for (uint64_t a = 0; a < q_; ++a)
            for (uint64_t b = a; b < q_; ++b) {
                uint8_t m = (uint8_t)mul_generic(a, b);
                mul_tab_[a * q_ + b] = m;
                mul_tab_[b * q_ + a] = m;
                if (m == 1) {
                    inv_tab_[a] = (uint8_t)b;
                    inv_tab_[b] = (uint8_t)a;
                }
            }
    }
}

Field FieldSpec::make(uint32_t p, uint32_t k, std::vector<uint32_t> modulus) {
    return Field(new FieldSpec(p, k, std::move(modulus)));
}

Field FieldSpec::make(uint32_t p, uint32_t k) {
    if (k == 1) return make(p, 1, {0, 1});
    if (p == 2) {
        switch (k) {
            case 2: return make(2, 2, {1, 1, 1});
            case 3: return make(2, 3, {1, 1, 0, 1});
            case 4: return make(2, 4, {1, 1, 0, 0, 1});
            case 5: return make(2, 5, {1, 0, 1, 0, 0, 1});
            default: break;
        }
    }
    fail(Err::InvalidField, "no canonical modulus for GF(" + std::to_string(p) + "^" +
                                std::to_string(k) + "); supply one explicitly");
}

bool FieldSpec::same(const FieldSpec& o) const {
    return this == &o || (p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_);
}

uint64_t FieldSpec::coeff(uint64_t enc, uint32_t i) const {
    for (uint32_t j = 0; j < i; ++j) enc /= p_;
    return enc % p_;
}

uint64_t FieldSpec::encode(const std::vector<uint32_t>& coeffs) const {
    require(coeffs.size() <= k_, Err::InvalidField, "too many coefficients");
    uint64_t enc = 0, w = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        uint32_t c = i < coeffs.size() ? coeffs[i] : 0;
        require(c < p_, Err::InvalidField, "coefficient not reduced mod p");
        enc += (uint64_t)c * w;
        w *= p_;
    }
    return enc;
}

std::vector<uint32_t> FieldSpec::decode(uint64_t enc) const {
    std::vector<uint32_t> c(k_);
    for (uint32_t i = 0; i < k_; ++i) {
        c[i] = (uint32_t)(enc % p_);
        enc /= p_;
    }
    return c;
}

uint64_t FieldSpec::add(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    uint64_t r = 0, w = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        r += (a % p_ + b % p_) % p_ * w;
        a /= p_;
        b /= p_;
        w *= p_;
    }
    return r;
}

uint64_t FieldSpec::neg(uint64_t a) const {
    if (p_ == 2) return a;
    uint64_t r = 0, w = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        uint64_t c = a % p_;
        r += (c ? p_ - c : 0) * w;
        a /= p_;
        w *= p_;
    }
    return r;
}

uint64_t FieldSpec::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t FieldSpec::mul_generic(uint64_t a, uint64_t b) const {
    Poly pa, pb;
    for (uint32_t i = 0; i < k_; ++i) {
        pa.push_back((uint32_t)(a % p_));
        a /= p_;
        pb.push_back((uint32_t)(b % p_));
        b /= p_;
    }
    Poly m(modulus_.begin(), modulus_.end());
    Poly c = poly_mul_mod(pa, pb, m, p_);
    uint64_t enc = 0, w = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        enc += (i < c.size() ? c[i] : 0) * w;
        w *= p_;
    }
    return enc;
}

uint64_t FieldSpec::mul(uint64_t a, uint64_t b) const {
    if (tabled_) return mul_tab_[a * q_ + b];
    return mul_generic(a, b);
}

uint64_t FieldSpec::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t FieldSpec::inv_generic(uint64_t a) const {
    require(a != 0, Err::DivisionByZero, "inverse of zero");
    // a^(q-2); q fits in 64 bits by construction
    uint64_t e = q_ - 2, r = 1;
    while (e) {
        if (e & 1) r = mul_generic(r, a);
        a = mul_generic(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t FieldSpec::inv(uint64_t a) const {
    require(a != 0, Err::DivisionByZero, "inverse of zero");
    if (tabled_) return inv_tab_[a];
    return inv_generic(a);
}

uint64_t FieldSpec::trace(uint64_t a) const {
    uint64_t s = 0, x = a;
    for (uint32_t i = 0; i < k_; ++i) {
        s = add(s, x);
        x = frobenius(x);
    }
    return s; // lies in the prime field, so enc < p
}

std::string FieldSpec::to_string(uint64_t enc) const {
    if (k_ == 1) return std::to_string(enc);
    std::ostringstream os;
    for (uint32_t i = 0; i < k_; ++i) {
        uint64_t c = coeff(enc, i);
        if (i) os << "+";
        os << c;
        if (i == 1) os << "*a";
        if (i > 1) os << "*a^" << i;
    }
    return os.str();
}

uint64_t FieldSpec::parse(const std::string& s) const {
    std::vector<uint32_t> coeffs;
    size_t pos = 0;
    uint32_t idx = 0;
    while (pos < s.size()) {
        size_t next = s.find('+', pos);
        std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
        size_t star = term.find('*');
        require((star == std::string::npos) == (idx == 0), Err::ParseError,
                "field element term " + std::to_string(idx) + " malformed in '" + s + "'");
        std::string num = star == std::string::npos ? term : term.substr(0, star);
        if (star != std::string::npos) {
            std::string av = term.substr(star + 1);
            uint32_t expected;
            if (av == "a") {
                expected = 1;
            } else if (av.rfind("a^", 0) == 0) {
                expected = (uint32_t)std::stoul(av.substr(2));
            } else {
                fail(Err::ParseError, "bad field element term '" + term + "'");
            }
            require(expected == idx, Err::ParseError,
                    "field element coefficients out of order in '" + s + "'");
        }
        uint32_t c;
        try {
            c = (uint32_t)std::stoul(num);
        } catch (const std::exception&) {
            fail(Err::ParseError, "bad coefficient '" + num + "'");
        }
        require(c < p_, Err::ParseError, "coefficient not reduced mod p in '" + s + "'");
        coeffs.push_back(c);
        ++idx;
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    require(coeffs.size() == k_ || (k_ == 1 && coeffs.size() == 1), Err::ParseError,
            "expected " + std::to_string(k_) + " coefficients in '" + s + "'");
    return encode(coeffs);
}

std::vector<uint64_t> embedding_basis(const FieldSpec& src, const FieldSpec& tgt) {
    require(src.p() == tgt.p(), Err::IncompatibleFields, "embed: different characteristic");
    require(tgt.k() % src.k() == 0, Err::IncompatibleFields,
            "embed: source degree does not divide target degree");
    require(tgt.q() <= (1u << 20), Err::SizeCap, "embed: target field too large for root scan");
    if (src.k() == 1) {
        std::vector<uint64_t> basis{1};
        return basis;
    }
    // smallest root of the source modulus in the target, encoding order
    uint64_t root = 0;
    bool found = false;
    for (uint64_t x = 0; x < tgt.q(); ++x) {
        uint64_t v = 0, xp = 1;
        for (uint32_t i = 0; i <= src.k(); ++i) {
            uint64_t c = i < src.modulus().size() ? src.modulus()[i] : 0;
            // modulus coefficients are prime-field values; valid in tgt encoding
            v = tgt.add(v, tgt.mul(c, xp));
            xp = tgt.mul(xp, x);
        }
        if (v == 0) {
            root = x;
            found = true;
            break;
        }
    }
    require(found, Err::IncompatibleFields, "embed: source modulus has no root in target");
    std::vector<uint64_t> basis(src.k());
    uint64_t acc = 1;
    for (uint32_t i = 0; i < src.k(); ++i) {
        basis[i] = acc;
        acc = tgt.mul(acc, root);
    }
    return basis;
}

uint64_t embed(const FieldSpec& src, uint64_t a, const FieldSpec& tgt) {
    if (src.same(tgt)) return a;
    auto basis = embedding_basis(src, tgt);
    uint64_t r = 0;
    for (uint32_t i = 0; i < src.k(); ++i) r = tgt.add(r, tgt.mul(src.coeff(a, i), basis[i]));
    return r;
}

FE embed(const FE& a, const Field& tgt) { return FE(tgt, embed(*a.field(), a.enc(), *tgt)); }

} // namespace lagrangia
