#include "lagrangia/polyring.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "lagrangia/matrix.hpp"

namespace lagrangia {

Ring make_ring(Field f, uint32_t nvars, MonOrder order) {
    require(nvars >= 1 && nvars <= 8, Err::UnsupportedShape, "rings support 1..8 variables");
    return std::make_shared<const PolyRing>(PolyRing{std::move(f), nvars, order});
}

int mono_cmp(const Monomial& a, const Monomial& b, MonOrder ord, uint32_t nvars) {
    if (ord == MonOrder::Grevlex) {
        if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
        for (uint32_t i = nvars; i-- > 0;) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
        }
        return 0;
    }
    for (uint32_t i = 0; i < nvars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    if (a.deg > b.deg) return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (size_t i = 0; i < a.e.size(); ++i) {
        unsigned s = a.e[i] + b.e[i];
        require(s <= 255, Err::DegreeOverflow, "monomial exponent overflow");
        m.e[i] = (uint8_t)s;
    }
    m.deg = a.deg + b.deg;
    return m;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial m;
    for (size_t i = 0; i < a.e.size(); ++i) m.e[i] = (uint8_t)(b.e[i] - a.e[i]);
    m.deg = b.deg - a.deg;
    return m;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    uint16_t d = 0;
    for (size_t i = 0; i < a.e.size(); ++i) {
        m.e[i] = std::max(a.e[i], b.e[i]);
        d += m.e[i];
    }
    m.deg = d;
    return m;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

FieldEmbedding::FieldEmbedding(Field src, Field tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {
    require(src_->q() <= (1u << 16), Err::SizeCap, "embedding table source too large");
    map_.resize(src_->q());
    if (src_->same(*tgt_)) {
        for (uint64_t a = 0; a < src_->q(); ++a) map_[a] = a;
        return;
    }
    auto basis = embedding_basis(*src_, *tgt_);
    for (uint64_t a = 0; a < src_->q(); ++a) {
        uint64_t r = 0;
        for (uint32_t i = 0; i < src_->k(); ++i)
            r = tgt_->add(r, tgt_->mul(src_->coeff(a, i), basis[i]));
        map_[a] = r;
    }
}

Polynomial::Polynomial(Ring r, std::vector<Term> terms) : r_(std::move(r)), t_(std::move(terms)) {
    normalize();
}

void Polynomial::normalize() {
    auto cmp = [&](const Term& a, const Term& b) {
        return mono_cmp(a.m, b.m, r_->order, r_->nvars) > 0;
    };
    std::sort(t_.begin(), t_.end(), cmp);
    std::vector<Term> out;
    out.reserve(t_.size());
    const auto& f = *r_->field;
    for (auto& t : t_) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c = f.add(out.back().c, t.c);
            if (out.back().c == 0) out.pop_back();
        } else if (t.c != 0) {
            out.push_back(t);
        }
    }
    t_ = std::move(out);
}

Polynomial Polynomial::constant(const Ring& r, uint64_t c) {
    return Polynomial(r, c ? std::vector<Term>{{Monomial::one(), c}} : std::vector<Term>{});
}

Polynomial Polynomial::variable(const Ring& r, uint32_t i) {
    require(i < r->nvars, Err::DimensionMismatch, "variable index out of range");
    return Polynomial(r, {{Monomial::var(i), 1}});
}

Polynomial Polynomial::monomial(const Ring& r, const Monomial& m, uint64_t c) {
    return Polynomial(r, c ? std::vector<Term>{{m, c}} : std::vector<Term>{});
}

const Term& Polynomial::lead() const {
    require(!t_.empty(), Err::DivisionByZero, "leading term of zero polynomial");
    return t_.front();
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, (int)t.m.deg);
    return d;
}

bool Polynomial::is_homogeneous() const {
    for (const auto& t : t_)
        if (t.m.deg != t_.front().m.deg) return false;
    return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Term> all = t_;
    all.insert(all.end(), o.t_.begin(), o.t_.end());
    return Polynomial(r_ ? r_ : o.r_, std::move(all));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    return *this + o.scaled(o.r_ ? o.r_->field->neg(1) : 0);
}

Polynomial Polynomial::scaled(uint64_t c) const {
    if (!r_) return *this;
    std::vector<Term> out;
    out.reserve(t_.size());
    const auto& f = *r_->field;
    for (const auto& t : t_) {
        uint64_t nc = f.mul(t.c, c);
        if (nc) out.push_back({t.m, nc});
    }
    Polynomial p(r_);
    p.t_ = std::move(out); // scaling preserves order
    return p;
}

Polynomial Polynomial::times_term(uint64_t c, const Monomial& m) const {
    std::vector<Term> out;
    out.reserve(t_.size());
    const auto& f = *r_->field;
    for (const auto& t : t_) {
        uint64_t nc = f.mul(t.c, c);
        if (nc) out.push_back({mono_mul(t.m, m), nc});
    }
    Polynomial p(r_);
    p.t_ = std::move(out); // multiplying by one monomial preserves order
    return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    std::vector<Term> all;
    all.reserve(t_.size() * o.t_.size());
    const auto& f = *r_->field;
    for (const auto& a : t_)
        for (const auto& b : o.t_) {
            uint64_t c = f.mul(a.c, b.c);
            if (c) all.push_back({mono_mul(a.m, b.m), c});
        }
    return Polynomial(r_, std::move(all));
}

uint64_t Polynomial::coeff(const Monomial& m) const {
    for (const auto& t : t_)
        if (t.m == m) return t.c;
    return 0;
}

uint64_t Polynomial::eval(std::span<const uint64_t> pt, const FieldEmbedding* emb) const {
    const FieldSpec& f = emb ? *emb->target() : *r_->field;
    require(pt.size() == r_->nvars, Err::DimensionMismatch, "eval point arity");
    uint64_t acc = 0;
    for (const auto& t : t_) {
        uint64_t v = emb ? (*emb)(t.c) : t.c;
        for (uint32_t i = 0; i < r_->nvars && v; ++i)
            for (uint8_t e = 0; e < t.m.e[i]; ++e) v = f.mul(v, pt[i]);
        acc = f.add(acc, v);
    }
    return acc;
}

Polynomial Polynomial::partial(uint32_t var) const {
    const auto& f = *r_->field;
    std::vector<Term> out;
    for (const auto& t : t_) {
        if (!t.m.e[var]) continue;
        uint64_t c = f.mul(t.c, t.m.e[var] % f.p());
        if (!c) continue;
        Monomial m = t.m;
        --m.e[var];
        --m.deg;
        out.push_back({m, c});
    }
    return Polynomial(r_, std::move(out));
}

Polynomial Polynomial::substitute_linear(const Matrix& a) const {
    require(a.rows() == r_->nvars && a.cols() == r_->nvars, Err::DimensionMismatch,
            "substitution matrix must be nvars x nvars");
    std::vector<Polynomial> images;
    for (uint32_t i = 0; i < r_->nvars; ++i) {
        std::vector<Term> lt;
        for (uint32_t j = 0; j < r_->nvars; ++j)
            if (a(i, j)) lt.push_back({Monomial::var(j), a(i, j)});
        images.push_back(Polynomial(r_, std::move(lt)));
    }
    Polynomial acc(r_);
    for (const auto& t : t_) {
        Polynomial prod = Polynomial::constant(r_, t.c);
        for (uint32_t i = 0; i < r_->nvars; ++i)
            for (uint8_t e = 0; e < t.m.e[i]; ++e) prod = prod * images[i];
        acc = acc + prod;
    }
    return acc;
}

Polynomial Polynomial::frobenius_power() const {
    const auto& f = *r_->field;
    uint32_t p = f.p();
    std::vector<Term> out;
    out.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial m;
        for (size_t i = 0; i < m.e.size(); ++i) {
            unsigned s = t.m.e[i] * p;
            require(s <= 255, Err::DegreeOverflow, "Frobenius exponent overflow");
            m.e[i] = (uint8_t)s;
        }
        m.deg = (uint16_t)(t.m.deg * p);
        out.push_back({m, f.frobenius(t.c)});
    }
    Polynomial r(r_);
    r.t_ = std::move(out); // termwise p-th power preserves the term order
    return r;
}

std::string Polynomial::str() const {
    if (t_.empty()) return "0";
    const auto& f = *r_->field;
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        if (!first) os << " + ";
        first = false;
        bool has_vars = t.m.deg > 0;
        if (t.c != 1 || !has_vars) {
            std::string cs = f.to_string(t.c);
            if (cs.find('+') != std::string::npos) {
                os << "(" << cs << ")";
            } else {
                os << cs;
            }
            if (has_vars) os << "*";
        }
        bool firstv = true;
        for (uint32_t i = 0; i < r_->nvars; ++i) {
            if (!t.m.e[i]) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << "x" << i;
            if (t.m.e[i] > 1) os << "^" << (int)t.m.e[i];
        }
    }
    return os.str();
}

namespace {
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}
std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}
} // namespace

Polynomial Polynomial::parse(const Ring& r, const std::string& s) {
    const auto& f = *r->field;
    std::string body = strip(s);
    if (body == "0") return Polynomial(r);
    std::vector<Term> terms;
    for (const std::string& raw : split_top(body, '+')) {
        std::string ts = strip(raw);
        // re-join field-element pluses: split_top already respects parens, so
        // a '+' inside a coefficient must have been parenthesized
        require(!ts.empty(), Err::ParseError, "empty term in '" + s + "'");
        uint64_t coeff = 1;
        bool saw_coeff = false;
        Monomial m;
        for (const std::string& rawf : split_top(ts, '*')) {
            std::string fac = strip(rawf);
            require(!fac.empty(), Err::ParseError, "empty factor in '" + ts + "'");
            if (fac[0] == '(') {
                require(fac.back() == ')', Err::ParseError, "unbalanced parens in '" + fac + "'");
                coeff = f.mul(coeff, f.parse(fac.substr(1, fac.size() - 2)));
                saw_coeff = true;
            } else if (fac[0] == 'x') {
                size_t caret = fac.find('^');
                uint32_t vi = (uint32_t)std::stoul(fac.substr(1, caret - 1));
                require(vi < r->nvars, Err::ParseError, "variable out of range in '" + fac + "'");
                unsigned e = 1;
                if (caret != std::string::npos) e = (unsigned)std::stoul(fac.substr(caret + 1));
                unsigned tot = m.e[vi] + e;
                require(tot <= 255, Err::ParseError, "exponent too large");
                m.e[vi] = (uint8_t)tot;
                m.deg = (uint16_t)(m.deg + e);
            } else {
                // bare integer constant (prime-field value)
                uint64_t c;
                try {
                    c = std::stoull(fac);
                } catch (const std::exception&) {
                    fail(Err::ParseError, "bad factor '" + fac + "'");
                }
                require(c < f.p(), Err::ParseError, "bare coefficient must be < p");
                coeff = f.mul(coeff, c);
                saw_coeff = true;
            }
        }
        (void)saw_coeff;
        if (coeff) terms.push_back({m, coeff});
    }
    return Polynomial(r, std::move(terms));
}

std::vector<Monomial> monomials_of_degree(const Ring& r, unsigned d) {
    std::vector<Monomial> out;
    Monomial m;
    // enumerate exponent vectors summing to d over nvars variables
    std::function<void(uint32_t, unsigned)> rec = [&](uint32_t var, unsigned left) {
        if (var + 1 == r->nvars) {
            m.e[var] = (uint8_t)left;
            m.deg = (uint16_t)d;
            out.push_back(m);
            m.e[var] = 0;
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m.e[var] = (uint8_t)e;
            rec(var + 1, left - e);
        }
        m.e[var] = 0;
    };
    require(d <= 255, Err::SizeCap, "degree too large");
    rec(0, d);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        return mono_cmp(a, b, r->order, r->nvars) > 0;
    });
    return out;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> g) {
    if (f.is_zero()) return f;
    const Ring& r = f.ring();
    const auto& fld = *r->field;
    Polynomial p = f;
    std::vector<Term> remainder;
    while (!p.is_zero()) {
        const Term& t = p.lead();
        bool reduced = false;
        for (const auto& gi : g) {
            if (gi.is_zero()) continue;
            const Term& lg = gi.lead();
            if (!mono_divides(lg.m, t.m)) continue;
            uint64_t q = fld.div(t.c, lg.c);
            p = p - gi.times_term(q, mono_div(t.m, lg.m));
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.push_back(t);
            p = p - Polynomial::monomial(r, t.m, t.c);
        }
    }
    Polynomial out(r, std::move(remainder));
    return out;
}

namespace {

struct Pair {
    size_t i, j;
    Monomial lcm;
};

} // namespace

std::vector<Polynomial> buchberger(const Ring& r, std::vector<Polynomial> gens) {
    const auto& f = *r->field;
    std::vector<Polynomial> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(g.scaled(f.inv(g.lead().c)));
    require(!basis.empty(), Err::DivisionByZero, "Groebner basis of the zero ideal");

    auto pair_less = [&](const Pair& a, const Pair& b) {
        if (a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<Pair> pending;
    std::set<std::pair<size_t, size_t>> done;
    auto push_pairs = [&](size_t n) {
        for (size_t i = 0; i < n; ++i)
            pending.push_back({i, n, mono_lcm(basis[i].lead().m, basis[n].lead().m)});
    };
    for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    while (!pending.empty()) {
        auto it = std::min_element(pending.begin(), pending.end(), pair_less);
        Pair pr = *it;
        pending.erase(it);
        done.insert({pr.i, pr.j});

        const Polynomial &gi = basis[pr.i], &gj = basis[pr.j];
        if (mono_coprime(gi.lead().m, gj.lead().m)) continue; // product criterion
        bool chained = false;
        for (size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(basis[k].lead().m, pr.lcm)) continue;
            auto key1 = std::minmax(pr.i, k);
            auto key2 = std::minmax(pr.j, k);
            if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second}))
                chained = true;
        }
        if (chained) continue;

        Polynomial s = gi.times_term(1, mono_div(pr.lcm, gi.lead().m)) -
                       gj.times_term(1, mono_div(pr.lcm, gj.lead().m));
        Polynomial nf = normal_form(s, basis);
        if (nf.is_zero()) continue;
        basis.push_back(nf.scaled(f.inv(nf.lead().c)));
        push_pairs(basis.size() - 1);
    }

    // reduced basis: drop redundant leads, then tail-reduce to the unique form
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial &mi = basis[i].lead().m, &mj = basis[j].lead().m;
            if (!mono_divides(mj, mi)) continue;
            if (!(mi == mj) || j < i) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> rest;
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) rest.push_back(minimal[j]);
            Polynomial nf = normal_form(minimal[i], rest);
            if (nf != minimal[i]) {
                minimal[i] = nf.scaled(f.inv(nf.lead().c));
                changed = true;
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return mono_cmp(a.lead().m, b.lead().m, r->order, r->nvars) > 0;
    });
    return minimal;
}

Ideal::Ideal(Ring r, std::vector<Polynomial> gens) : st_(std::make_shared<State>()) {
    st_->ring = std::move(r);
    st_->gens = std::move(gens);
}

const std::vector<Polynomial>& Ideal::groebner_basis() const {
    std::lock_guard<std::mutex> lock(st_->mu);
    if (!st_->gb)
        st_->gb = std::make_shared<const std::vector<Polynomial>>(buchberger(st_->ring, st_->gens));
    return *st_->gb;
}

Ideal groebner(const Ideal& i) {
    i.groebner_basis();
    return i;
}

long hilbert_function(const Ideal& i, int t) {
    require(t <= 20, Err::SizeCap, "Hilbert function capped at degree 20");
    if (t < 0) return 0;
    for (const auto& g : i.gens())
        require(g.is_homogeneous(), Err::NonHomogeneous, "Hilbert function needs homogeneous ideal");
    const auto& gb = i.groebner_basis();
    std::vector<Monomial> leads;
    for (const auto& g : gb) leads.push_back(g.lead().m);
    long cnt = 0;
    for (const auto& m : monomials_of_degree(i.ring(), (unsigned)t)) {
        bool in_lead = false;
        for (const auto& l : leads)
            if (mono_divides(l, m)) {
                in_lead = true;
                break;
            }
        if (!in_lead) ++cnt;
    }
    return cnt;
}

bool ideal_contains(const Ideal& i, const Polynomial& f) {
    return normal_form(f, i.groebner_basis()).is_zero();
}

} // namespace lagrangia
