#include "lagrangia/loci.hpp"

#include <algorithm>
#include <numeric>

namespace lagrangia {

ProjPoint::ProjPoint(Field f, std::vector<uint64_t> coords) : f_(std::move(f)), x_(std::move(coords)) {
    size_t lead = x_.size();
    for (size_t i = 0; i < x_.size(); ++i)
        if (x_[i]) {
            lead = i;
            break;
        }
    require(lead < x_.size(), Err::PointNotOnLocus, "projective point must be nonzero");
    if (x_[lead] != 1) {
        uint64_t s = f_->inv(x_[lead]);
        for (auto& c : x_) c = f_->mul(c, s);
    }
}

const Ambient& p5_ambient() {
    static const Ambient a{6, 3, 3, 10, 12, "p5-enriques"};
    return a;
}
const Ambient& p7_ambient() {
    static const Ambient a{8, 4, 10, 35, 40, "p7-fourfold"};
    return a;
}

Lagrangian fiber_lagrangian(const ProjPoint& xi, unsigned m) {
    unsigned n = 2 * m;
    require(xi.dim_v() == n && (m == 3 || m == 4), Err::UnsupportedShape,
            "fiber Lagrangian needs dim V = 2m in {6,8}");
    ExteriorVector v(xi.field(), n, 1);
    for (size_t i = 0; i < n; ++i) v[i] = xi.coords()[i];
    auto space = QuadraticSpace::divided_square_space(xi.field(), m);
    return Lagrangian(space, mult_matrix(v, m - 1).column_space_echelon());
}

Lagrangian extend_lagrangian(const Lagrangian& w, const Field& tgt, unsigned m) {
    const Field& src = w.space().field();
    if (src->same(*tgt)) return w;
    FieldEmbedding emb(src, tgt);
    Matrix b(tgt, w.basis().rows(), w.basis().cols());
    for (size_t r = 0; r < b.rows(); ++r)
        for (size_t c = 0; c < b.cols(); ++c) b(r, c) = emb(w.basis()(r, c));
    return Lagrangian(QuadraticSpace::divided_square_space(tgt, m), std::move(b));
}

Membership locus_membership(const ProjPoint& xi, const Lagrangian& w, unsigned m) {
    // W_xi cap W = { v in W : xi ^ v = 0 } by Koszul exactness at the middle
    const Field& f = xi.field();
    Lagrangian we = extend_lagrangian(w, f, m);
    ExteriorVector v(f, 2 * m, 1);
    for (size_t i = 0; i < 2 * m; ++i) v[i] = xi.coords()[i];
    Matrix mm = mult_matrix(v, m);
    Matrix img = mm * we.basis();
    size_t dim = we.basis().cols() - img.rank();
    require(dim % 2 == 1, Err::OddParityViolation,
            "even intersection dimension: W is not in the family opposite to the fibers");
    return {dim, dim >= 3};
}

// ----------------------------------------------------------------------------
// fast census scanner over GF(2^k), characteristic 2 only
// ----------------------------------------------------------------------------

namespace {

struct Scanner {
    const Ambient& amb;
    Field ext;                      // GF(2^k)
    const uint8_t* mul;             // raw q x q table
    uint64_t q;
    size_t nb, nb1, n;              // dim Lambda^m, dim Lambda^{m+1}, n = nb/2
    std::vector<uint8_t> wcols;     // embedded W basis, column-major [j][t]
    // structure constants for e_i ^ e_T, T an m-index: target row or -1
    std::vector<int> sc;            // [i * nb + t] -> row in Lambda^{m+1} or -1

    Scanner(const Ambient& a, const Lagrangian& w, const Field& ext_field)
        : amb(a), ext(ext_field) {
        require(ext->p() == 2, Err::UnsupportedShape, "census scanning is characteristic 2");
        mul = ext->mul_table_raw();
        require(mul != nullptr, Err::SizeCap, "extension field too large to scan");
        q = ext->q();
        nb = binom(a.dim_v, a.m);
        nb1 = binom(a.dim_v, a.m + 1);
        n = nb / 2;

        FieldEmbedding emb(w.space().field(), ext);
        wcols.assign(n * nb, 0);
        for (size_t j = 0; j < n; ++j)
            for (size_t t = 0; t < nb; ++t)
                wcols[j * nb + t] = (uint8_t)emb(w.basis()(t, j));

        sc.assign(a.dim_v * nb, -1);
        for (size_t t = 0; t < nb; ++t) {
            MultiIndex T = mi_unrank(a.dim_v, a.m, t);
            for (unsigned i = 0; i < a.dim_v; ++i) {
                if (std::find(T.begin(), T.end(), (uint8_t)i) != T.end()) continue;
                MultiIndex U = T;
                U.insert(std::upper_bound(U.begin(), U.end(), (uint8_t)i), (uint8_t)i);
                sc[i * nb + t] = (int)mi_rank(a.dim_v, U);
            }
        }
    }

    // dim(W_xi cap W) for one point
    size_t intersection_dim(const uint8_t* xi) const {
        // rows[j] = xi ^ w_j in Lambda^{m+1}
        std::vector<uint8_t> rows(n * nb1, 0);
        for (size_t j = 0; j < n; ++j) {
            const uint8_t* wc = &wcols[j * nb];
            uint8_t* row = &rows[j * nb1];
            for (unsigned i = 0; i < amb.dim_v; ++i) {
                uint8_t xv = xi[i];
                if (!xv) continue;
                const uint8_t* mrow = mul + (size_t)xv * q;
                const int* sci = &sc[i * nb];
                for (size_t t = 0; t < nb; ++t) {
                    uint8_t wv = wc[t];
                    if (wv && sci[t] >= 0) row[sci[t]] ^= mrow[wv];
                }
            }
        }
        // rank by in-place elimination
        size_t rank = 0;
        const uint8_t* inv = ext->inv_table_raw();
        for (size_t col = 0; col < nb1 && rank < n; ++col) {
            size_t piv = rank;
            while (piv < n && rows[piv * nb1 + col] == 0) ++piv;
            if (piv == n) continue;
            if (piv != rank)
                for (size_t c2 = col; c2 < nb1; ++c2)
                    std::swap(rows[piv * nb1 + c2], rows[rank * nb1 + c2]);
            uint8_t pv = rows[rank * nb1 + col];
            const uint8_t* pinv = mul + (size_t)inv[pv] * q;
            for (size_t c2 = col; c2 < nb1; ++c2)
                rows[rank * nb1 + c2] = pinv[rows[rank * nb1 + c2]];
            for (size_t r2 = rank + 1; r2 < n; ++r2) {
                uint8_t v = rows[r2 * nb1 + col];
                if (!v) continue;
                const uint8_t* mv = mul + (size_t)v * q;
                for (size_t c2 = col; c2 < nb1; ++c2)
                    rows[r2 * nb1 + c2] ^= mv[rows[rank * nb1 + c2]];
            }
            ++rank;
        }
        return n - rank;
    }

    // visit all normalized points in lexicographic coordinate order
    template <typename F>
    void scan(F&& visit) const {
        unsigned dv = amb.dim_v;
        std::vector<uint8_t> xi(dv, 0);
        for (unsigned pos = dv; pos-- > 0;) {
            std::fill(xi.begin(), xi.end(), 0);
            xi[pos] = 1;
            // trailing coordinates xi[pos+1..] run through all values,
            // earlier index = more significant
            size_t tail = dv - pos - 1;
            uint64_t total = 1;
            for (size_t i = 0; i < tail; ++i) total *= q;
            for (uint64_t code = 0; code < total; ++code) {
                uint64_t c = code;
                for (size_t i = 0; i < tail; ++i) {
                    xi[dv - 1 - i] = (uint8_t)(c % q);
                    c /= q;
                }
                size_t dim = intersection_dim(xi.data());
                require(dim % 2 == 1, Err::OddParityViolation,
                        "even intersection dimension during census scan");
                if (dim >= 3) visit(xi.data(), dim);
            }
        }
    }
};

// incremental reduced row echelon over a small field (bytes)
struct FieldEchelon {
    const FieldSpec* f;
    size_t ncols;
    std::vector<std::vector<uint8_t>> rows;
    std::vector<size_t> pivots;

    FieldEchelon(const FieldSpec* fld, size_t n) : f(fld), ncols(n) {}

    void insert(std::vector<uint8_t> row) {
        for (size_t i = 0; i < rows.size(); ++i) {
            uint8_t v = row[pivots[i]];
            if (!v) continue;
            for (size_t c = 0; c < ncols; ++c)
                row[c] = (uint8_t)f->sub(row[c], f->mul(v, rows[i][c]));
        }
        size_t lead = ncols;
        for (size_t c = 0; c < ncols; ++c)
            if (row[c]) {
                lead = c;
                break;
            }
        if (lead == ncols) return;
        uint64_t inv = f->inv(row[lead]);
        for (size_t c = 0; c < ncols; ++c) row[c] = (uint8_t)f->mul(row[c], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            uint8_t v = rows[i][lead];
            if (!v) continue;
            for (size_t c = 0; c < ncols; ++c)
                rows[i][c] = (uint8_t)f->sub(rows[i][c], f->mul(v, row[c]));
        }
        size_t at = 0;
        while (at < pivots.size() && pivots[at] < lead) ++at;
        rows.insert(rows.begin() + at, std::move(row));
        pivots.insert(pivots.begin() + at, lead);
    }

    size_t rank() const { return rows.size(); }
    size_t kernel_dim() const { return ncols - rows.size(); }

    std::vector<std::vector<uint8_t>> kernel_basis() const {
        std::vector<std::vector<uint8_t>> out;
        size_t pi = 0;
        for (size_t c = 0; c < ncols; ++c) {
            if (pi < pivots.size() && pivots[pi] == c) {
                ++pi;
                continue;
            }
            std::vector<uint8_t> v(ncols, 0);
            v[c] = 1;
            for (size_t i = 0; i < rows.size(); ++i)
                v[pivots[i]] = (uint8_t)f->neg(rows[i][c]);
            out.push_back(std::move(v));
        }
        return out;
    }
};

// coordinates of GF(2^k) over the embedded GF(2^k0) with basis {1, a, ...}
struct SubfieldExpansion {
    Field base, ext;
    size_t slots;
    std::vector<uint64_t> tinv; // k x k GF(2) inverse transition, rows as bit masks

    SubfieldExpansion(Field b, Field e) : base(std::move(b)), ext(std::move(e)) {
        uint32_t k0 = base->k(), k = ext->k();
        require(k % k0 == 0, Err::IncompatibleFields, "expansion needs a subfield");
        slots = k / k0;
        FieldEmbedding emb(base, ext);
        // transition T: column (s*k0 + t) = bits of emb(alpha^t) * a^s
        std::vector<uint64_t> cols(k);
        for (size_t s = 0; s < slots; ++s) {
            uint64_t as = ext->pow(2 % ext->q(), s); // a = encoding 2 when k > 1
            if (ext->k() == 1) as = 1;
            for (uint32_t t = 0; t < k0; ++t) {
                uint64_t bt = base->pow(2 % base->q(), t);
                if (base->k() == 1) bt = 1;
                cols[s * k0 + t] = ext->mul(emb(bt), as);
            }
        }
        // invert the k x k GF(2) matrix whose columns are cols (bit rows)
        std::vector<uint64_t> a(k), inv(k);
        for (uint32_t r = 0; r < k; ++r) {
            uint64_t bits = 0;
            for (uint32_t c = 0; c < k; ++c)
                if ((cols[c] >> r) & 1) bits |= 1ULL << c;
            a[r] = bits;
            inv[r] = 1ULL << r;
        }
        for (uint32_t col = 0, rank = 0; col < k; ++col) {
            uint32_t piv = rank;
            while (piv < k && !((a[piv] >> col) & 1)) ++piv;
            require(piv < k, Err::IncompatibleFields, "expansion basis is dependent");
            std::swap(a[piv], a[rank]);
            std::swap(inv[piv], inv[rank]);
            for (uint32_t r = 0; r < k; ++r)
                if (r != rank && ((a[r] >> col) & 1)) {
                    a[r] ^= a[rank];
                    inv[r] ^= inv[rank];
                }
            ++rank;
        }
        tinv = std::move(inv);
    }

    // out[slots] over the base field
    void expand(uint64_t v, uint64_t* out) const {
        uint32_t k = ext->k(), k0 = base->k();
        uint64_t x = 0;
        for (uint32_t r = 0; r < k; ++r)
            if (__builtin_parityll(tinv[r] & v)) x |= 1ULL << r;
        for (size_t s = 0; s < slots; ++s) out[s] = (x >> (s * k0)) & (((uint64_t)1 << k0) - 1);
    }
};

std::vector<std::vector<uint8_t>> monomial_exponents(const Ring& r, unsigned d) {
    std::vector<std::vector<uint8_t>> out;
    for (const auto& m : monomials_of_degree(r, d))
        out.emplace_back(m.e.begin(), m.e.begin() + r->nvars);
    return out;
}

} // namespace

std::vector<ProjPoint> enumerate_locus(const Lagrangian& w, unsigned ext_degree,
                                       const Ambient& amb) {
    require(ext_degree >= 1 && ext_degree <= 4, Err::SizeCap,
            "census extensions capped at GF(2^4)");
    const Field& base = w.space().field();
    require(ext_degree % base->k() == 0, Err::IncompatibleFields,
            "base field does not embed in the census field");
    Field ext = FieldSpec::make(2, ext_degree);
    Scanner sc(amb, w, ext);
    std::vector<ProjPoint> out;
    sc.scan([&](const uint8_t* xi, size_t) {
        std::vector<uint64_t> coords(xi, xi + amb.dim_v);
        out.emplace_back(ext, std::move(coords));
    });
    return out;
}

InterpolationResult interpolate_forms(const Lagrangian& w, const Ambient& amb) {
    const Field& base = w.space().field();
    uint32_t k0 = base->k();
    require(base->p() == 2 && (k0 == 1 || k0 == 2), Err::UnsupportedShape,
            "interpolation supports base fields GF(2) and GF(4)");

    Ring ring = make_ring(base, amb.dim_v);
    auto main_mons = monomial_exponents(ring, amb.form_degree);
    auto quad_mons = monomial_exponents(ring, 2);
    FieldEchelon main_ech(base.get(), main_mons.size());
    FieldEchelon quad_ech(base.get(), quad_mons.size());

    std::vector<unsigned> ks;
    for (unsigned k = k0; k <= 4; k *= 2) ks.push_back(k);

    InterpolationResult res;
    bool stabilized = false;
    for (unsigned k : ks) {
        Field ext = FieldSpec::make(2, k);
        Scanner sc(amb, w, ext);
        SubfieldExpansion exp(base, ext);
        size_t count = 0;
        std::vector<std::vector<uint64_t>> pts;
        std::vector<uint64_t> vals(main_mons.size()), qvals(quad_mons.size());
        std::vector<uint64_t> slots(exp.slots);

        auto eval_mons = [&](const std::vector<std::vector<uint8_t>>& mons,
                             const uint8_t* xi, std::vector<uint64_t>& out) {
            for (size_t mi = 0; mi < mons.size(); ++mi) {
                uint64_t v = 1;
                for (size_t c = 0; c < mons[mi].size() && v; ++c)
                    for (uint8_t e = 0; e < mons[mi][c]; ++e) v = ext->mul(v, xi[c]);
                out[mi] = v;
            }
        };

        sc.scan([&](const uint8_t* xi, size_t) {
            ++count;
            pts.emplace_back(xi, xi + amb.dim_v);
            eval_mons(main_mons, xi, vals);
            eval_mons(quad_mons, xi, qvals);
            for (size_t s = 0; s < exp.slots; ++s) {
                std::vector<uint8_t> row(main_mons.size());
                for (size_t mi = 0; mi < main_mons.size(); ++mi) {
                    exp.expand(vals[mi], slots.data());
                    row[mi] = (uint8_t)slots[s];
                }
                main_ech.insert(std::move(row));
                std::vector<uint8_t> qrow(quad_mons.size());
                for (size_t mi = 0; mi < quad_mons.size(); ++mi) {
                    exp.expand(qvals[mi], slots.data());
                    qrow[mi] = (uint8_t)slots[s];
                }
                quad_ech.insert(std::move(qrow));
            }
        });

        res.census.ext_degrees.push_back(k);
        res.census.counts.push_back(count);
        res.census.kernel_dims.push_back(main_ech.kernel_dim());
        res.census.last_field = ext;
        res.census.last_points = std::move(pts);

        size_t stages = res.census.kernel_dims.size();
        if (stages >= 2 && res.census.kernel_dims[stages - 1] == res.census.kernel_dims[stages - 2] &&
            res.census.kernel_dims.back() <= amb.stabilization_cap) {
            stabilized = true;
            break;
        }
    }
    (void)stabilized;
    require(main_ech.kernel_dim() == amb.expected_gens, Err::DimensionMismatch,
            "interpolated form space has dimension " + std::to_string(main_ech.kernel_dim()) +
                ", expected " + std::to_string(amb.expected_gens) +
                " (degenerate Lagrangian outside the construction's hypotheses)");

    auto mlist = monomials_of_degree(ring, amb.form_degree);
    for (const auto& vec : main_ech.kernel_basis()) {
        std::vector<Term> terms;
        for (size_t mi = 0; mi < mlist.size(); ++mi)
            if (vec[mi]) terms.push_back({mlist[mi], vec[mi]});
        res.gens.push_back(Polynomial(ring, std::move(terms)));
    }
    res.quadric_free = quad_ech.kernel_dim() == 0;
    return res;
}

std::vector<Polynomial> interpolate_cubics(const Lagrangian& w) {
    return interpolate_forms(w, p5_ambient()).gens;
}

bool quadric_check_points(const Ring& r, const std::vector<ProjPoint>& pts) {
    auto mons = monomials_of_degree(r, 2);
    FieldEchelon ech(r->field.get(), mons.size());
    for (const auto& p : pts) {
        require(p.field()->same(*r->field), Err::IncompatibleFields,
                "census points must live over the ring's field");
        std::vector<uint8_t> row(mons.size());
        for (size_t mi = 0; mi < mons.size(); ++mi) {
            uint64_t v = 1;
            for (uint32_t c = 0; c < r->nvars; ++c)
                for (uint8_t e = 0; e < mons[mi].e[c]; ++e) v = r->field->mul(v, p.coords()[c]);
            row[mi] = (uint8_t)v;
        }
        ech.insert(std::move(row));
    }
    return ech.kernel_dim() == 0;
}

Ideal stanley_reisner_ideal(const std::vector<MultiIndex>& facets, unsigned n_vertices) {
    require(n_vertices >= 1 && n_vertices <= 8, Err::UnsupportedShape,
            "vertex sets up to 8 vertices");
    for (const auto& f : facets) {
        require(f.size() == facets.front().size(), Err::UnsupportedShape,
                "facets must have equal dimension");
        for (uint8_t v : f)
            require(v < n_vertices, Err::DimensionMismatch, "facet vertex out of range");
    }
    auto is_face = [&](uint64_t set) {
        for (const auto& f : facets) {
            uint64_t fs = 0;
            for (uint8_t v : f) fs |= 1ULL << v;
            if ((set & ~fs) == 0) return true;
        }
        return set == 0;
    };
    Ring r = make_ring(FieldSpec::make(2, 1), n_vertices);
    std::vector<Polynomial> gens;
    for (uint64_t set = 1; set < (1ULL << n_vertices); ++set) {
        if (is_face(set)) continue;
        // minimal iff every proper subset is a face
        bool minimal = true;
        for (unsigned v = 0; v < n_vertices && minimal; ++v)
            if ((set >> v) & 1)
                if (!is_face(set & ~(1ULL << v))) minimal = false;
        if (!minimal) continue;
        Monomial m;
        for (unsigned v = 0; v < n_vertices; ++v)
            if ((set >> v) & 1) {
                m.e[v] = 1;
                ++m.deg;
            }
        gens.push_back(Polynomial::monomial(r, m));
    }
    std::sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
        return mono_cmp(a.lead().m, b.lead().m, r->order, r->nvars) > 0;
    });
    return Ideal(r, std::move(gens));
}

// The Lagrangian is spanned by the ten listed exterior monomials; the
// triangulation of the surface Z_W it cuts out has the complementary triples
// as facets (the same minimal RP^2 triangulation relabeled by i -> 5 - i),
// so those complements are the face triangles and the spanning monomials are
// the minimal non-faces.
const std::vector<MultiIndex>& reisner_monomials() {
    static const std::vector<MultiIndex> mons{{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5},
                                              {0, 4, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 5},
                                              {2, 3, 4}, {3, 4, 5}};
    return mons;
}

const std::vector<MultiIndex>& reisner_facets() {
    static const std::vector<MultiIndex> facets = [] {
        std::vector<MultiIndex> out;
        for (const auto& m : reisner_monomials()) out.push_back(mi_complement(6, m));
        std::sort(out.begin(), out.end());
        return out;
    }();
    return facets;
}

Lagrangian reisner_lagrangian() {
    Field f2 = FieldSpec::make(2, 1);
    auto space = QuadraticSpace::divided_square_space(f2, 3);
    Matrix b(f2, 20, 10);
    for (size_t c = 0; c < reisner_monomials().size(); ++c)
        b(mi_rank(6, reisner_monomials()[c]), c) = 1;
    return Lagrangian(space, std::move(b));
}

size_t jacobian_rank(const std::vector<Polynomial>& gens, const ProjPoint& xi) {
    require(!gens.empty(), Err::DimensionMismatch, "jacobian of an empty system");
    const Ring& r = gens.front().ring();
    FieldEmbedding emb(r->field, xi.field());
    for (const auto& g : gens)
        require(g.eval(xi.coords(), &emb) == 0, Err::PointNotOnLocus,
                "jacobian requested at a point off the locus");
    Matrix jac(xi.field(), gens.size(), r->nvars);
    for (size_t i = 0; i < gens.size(); ++i)
        for (uint32_t v = 0; v < r->nvars; ++v)
            jac(i, v) = gens[i].partial(v).eval(xi.coords(), &emb);
    return jac.rank();
}

// ----------------------------------------------------------------------------
// exact Euler characteristics, Hilbert polynomials, Chern degrees
// ----------------------------------------------------------------------------

namespace {

long long binom_poly(long long x, unsigned k) {
    // C(x, k) as the falling-factorial polynomial, exact for any integer x
    __int128 num = 1;
    for (unsigned i = 0; i < k; ++i) num *= (x - (long long)i);
    __int128 den = 1;
    for (unsigned i = 1; i <= k; ++i) den *= i;
    __int128 q = num / den;
    return (long long)q;
}

long long gcd_ll(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational rat(long long n, long long d) {
    require(d != 0, Err::DivisionByZero, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = gcd_ll(n, d);
    if (g) {
        n /= g;
        d /= g;
    }
    return {n, d};
}
Rational radd(Rational a, Rational b) { return rat(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational rmul(Rational a, Rational b) { return rat(a.num * b.num, a.den * b.den); }

} // namespace

bool RatPoly::is_integral() const {
    for (const auto& x : c)
        if (x.den != 1) return false;
    return true;
}

long long RatPoly::eval_int(long long t) const {
    Rational acc{0, 1};
    Rational power{1, 1};
    for (const auto& x : c) {
        acc = radd(acc, rmul(x, power));
        power = rmul(power, {t, 1});
    }
    require(acc.den == 1, Err::DimensionMismatch, "non-integral polynomial value");
    return acc.num;
}

long long euler_char_omega(unsigned n, unsigned p, long long t) {
    require(p <= n && n <= 7, Err::UnsupportedShape, "euler_char_omega needs 0 <= p <= n <= 7");
    long long acc = 0;
    for (unsigned j = 0; j <= p; ++j) {
        long long term = binom_poly((long long)n + 1, p - j) * binom_poly(t - (long long)p + j + n, n);
        acc += (j % 2 ? -term : term);
    }
    return acc;
}

namespace {
long long chi_of_term(const ShapeTerm& s, unsigned n, long long t) {
    if (s.omega_p == 0) return s.rank * binom_poly(t + s.twist + n, n);
    return s.rank * euler_char_omega(n, s.omega_p, t + s.twist);
}
} // namespace

ResolutionShape p5_shape() {
    return {{{0, 0, 1}}, {{0, -3, 10}}, {{3, 0, 1}}, {{0, -6, 1}}};
}
ResolutionShape p7_shape() {
    return {{{0, 0, 1}}, {{0, -10, 35}}, {{4, -6, 1}}, {{0, -20, 1}}};
}
ResolutionShape point_p3_shape() {
    return {{{0, -1, 1}}, {{0, -2, 3}}, {{0, -3, 3}}, {{0, -4, 1}}};
}

RatPoly hilbert_polynomial_from_shape(const ResolutionShape& shape, unsigned n) {
    auto chi = [&](long long t) {
        long long acc = 0;
        for (size_t lvl = 0; lvl < shape.size(); ++lvl)
            for (const auto& s : shape[lvl]) {
                long long v = chi_of_term(s, n, t);
                acc += (lvl % 2 ? -v : v);
            }
        return acc;
    };
    // Lagrange interpolation through t = 0 .. n+1 (degree <= n)
    unsigned pts = n + 2;
    RatPoly poly;
    poly.c.assign(pts, {0, 1});
    for (unsigned i = 0; i < pts; ++i) {
        long long yi = chi(i);
        // basis polynomial prod_{j != i} (t - j) / (i - j)
        std::vector<Rational> basis{{1, 1}};
        long long denom = 1;
        for (unsigned j = 0; j < pts; ++j) {
            if (j == i) continue;
            denom *= ((long long)i - (long long)j);
            std::vector<Rational> next(basis.size() + 1, {0, 1});
            for (size_t d = 0; d < basis.size(); ++d) {
                next[d + 1] = radd(next[d + 1], basis[d]);
                next[d] = radd(next[d], rmul(basis[d], {-(long long)j, 1}));
            }
            basis = std::move(next);
        }
        for (size_t d = 0; d < basis.size(); ++d)
            poly.c[d] = radd(poly.c[d], rmul(basis[d], rat(yi, denom)));
    }
    while (poly.c.size() > 1 && poly.c.back().num == 0) poly.c.pop_back();
    return poly;
}

namespace {

// truncated polynomials in Z[h]/(h^{n+1})
using HPoly = std::vector<long long>;

HPoly hmul(const HPoly& a, const HPoly& b, unsigned n) {
    HPoly c(n + 1, 0);
    for (unsigned i = 0; i <= n; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; i + j <= n; ++j) {
            if (!b[j]) continue;
            __int128 v = (__int128)a[i] * b[j] + c[i + j];
            c[i + j] = (long long)v;
        }
    }
    return c;
}

HPoly hinv(const HPoly& a, unsigned n) {
    require(a[0] == 1 || a[0] == -1, Err::NotDivisibleBy4, "inverting a non-unit total class");
    HPoly b(n + 1, 0);
    b[0] = a[0]; // 1/1 = 1, 1/-1 = -1
    for (unsigned d = 1; d <= n; ++d) {
        __int128 acc = 0;
        for (unsigned j = 1; j <= d; ++j) acc += (__int128)a[j] * b[d - j];
        b[d] = (long long)(-acc * a[0]);
    }
    return b;
}

// c_i(F (x) O(delta)) = sum_j C(r - j, i - j) delta^{i-j} c_j(F)
HPoly htwist(const HPoly& c, long long rank, long long delta, unsigned n) {
    HPoly out(n + 1, 0);
    for (unsigned i = 0; i <= n; ++i) {
        __int128 acc = 0;
        for (unsigned j = 0; j <= i; ++j) {
            __int128 mult = binom_poly(rank - (long long)j, i - j);
            __int128 dp = 1;
            for (unsigned t = 0; t < i - j; ++t) dp *= delta;
            acc += mult * dp * c[j];
        }
        out[i] = (long long)acc;
    }
    return out;
}

} // namespace

long long chern_degree_omega(unsigned n, unsigned p, unsigned copies) {
    require(n >= 4 && n <= 7 && p >= 1 && p <= n, Err::UnsupportedShape,
            "chern degree implemented for P^4..P^7");
    require(copies >= 1 && copies <= 4, Err::SizeCap, "copies capped at 4");
    // climb the truncated Koszul tower: c(Omega^q(q)) = c(Omega^{q-1}(q))^{-1}
    HPoly c(n + 1, 0);
    c[0] = 1; // Omega^0(0) = O
    for (unsigned q = 1; q <= p; ++q) {
        long long rank_prev = binom_poly((long long)n, q - 1);
        HPoly twisted = htwist(c, rank_prev, 1, n);
        c = hinv(twisted, n);
    }
    HPoly ce(n + 1, 0);
    ce[0] = 1;
    for (unsigned i = 0; i < copies; ++i) ce = hmul(ce, c, n);
    // dual bundle: c_i(E*) = (-1)^i c_i(E)
    for (unsigned i = 1; i <= n; i += 2) ce[i] = -ce[i];
    HPoly c1(n + 1, 0), c2(n + 1, 0), c3(n + 1, 0);
    c1[1] = ce[1];
    c2[2] = ce[2];
    c3[3] = ce[3];
    HPoly prod = hmul(c1, c2, n);
    long long val = prod[3] - 2 * ce[3];
    require(val % 4 == 0, Err::NotDivisibleBy4, "degeneracy class is not divisible by 4");
    return val / 4;
}

PfaffianDecision pfaffian_decision(const PfaffianInput& in) {
    require(in.n >= 1, Err::UnsupportedShape, "dimension must be >= 1");
    if (in.n % 2 != 0 || in.ell % 2 != 0)
        return {true, "(i)", "n or ell is odd"};
    if (in.n % 4 == 2 && in.characteristic != 2)
        return {true, "(ii)", "n = 2 (mod 4) and characteristic != 2"};
    // n, ell even; n = 0 (mod 4), or n = 2 (mod 4) in characteristic 2
    std::string case_ab = in.n % 4 == 0 ? "(a)" : "(b)";
    std::optional<long> dim = in.middle_dim;
    if (in.middle_form) {
        long fd = (long)in.middle_form->dim();
        require(!dim || *dim == fd, Err::DimensionMismatch,
                "middle dimension disagrees with the supplied form");
        dim = fd;
    }
    require(dim.has_value(), Err::Undecidable,
            "middle cohomology data required for the even-even case");
    if (*dim % 2 != 0)
        return {false, case_ab + "+(c)",
                "middle cohomology is odd-dimensional (h = " + std::to_string(*dim) + ")"};
    require(in.middle_form.has_value(), Err::Undecidable,
            "even-dimensional middle cohomology needs the cup-product form");
    WittClass w = witt_classify(*in.middle_form);
    if (w.hyperbolic)
        return {true, "(iii)",
                "middle cohomology carries a Lagrangian subspace for the cup product"};
    return {false, case_ab + "+(d)", "cup product form has no Lagrangian subspace"};
}

} // namespace lagrangia
