#include "lagrangia/exterior.hpp"

#include <algorithm>

namespace lagrangia {

uint64_t binom(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

size_t mi_rank(unsigned dim_v, const MultiIndex& mi) {
    const size_t k = mi.size();
    size_t r = 0;
    unsigned lo = 0;
    for (size_t t = 0; t < k; ++t) {
        for (unsigned v = lo; v < mi[t]; ++v) r += binom(dim_v - 1 - v, k - 1 - t);
        lo = mi[t] + 1;
    }
    return r;
}

MultiIndex mi_unrank(unsigned dim_v, unsigned k, size_t rank) {
    MultiIndex mi(k);
    unsigned v = 0;
    for (unsigned t = 0; t < k; ++t) {
        while (true) {
            uint64_t block = binom(dim_v - 1 - v, k - 1 - t);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        mi[t] = (uint8_t)v++;
    }
    return mi;
}

int shuffle_sign(const MultiIndex& a, const MultiIndex& b) {
    size_t inv = 0;
    for (uint8_t x : a)
        for (uint8_t y : b)
            if (x > y) ++inv;
    return inv % 2 ? -1 : 1;
}

MultiIndex mi_complement(unsigned dim_v, const MultiIndex& mi) {
    MultiIndex c;
    size_t t = 0;
    for (unsigned v = 0; v < dim_v; ++v) {
        if (t < mi.size() && mi[t] == v) {
            ++t;
        } else {
            c.push_back((uint8_t)v);
        }
    }
    return c;
}

ExteriorVector::ExteriorVector(Field f, unsigned dim_v, unsigned degree)
    : f_(std::move(f)), dim_v_(dim_v), degree_(degree) {
    require(dim_v >= 1 && dim_v <= 8, Err::UnsupportedShape, "dim V must be in [1,8]");
    require(degree <= dim_v, Err::DegreeOverflow, "exterior degree exceeds dim V");
    c_.assign(binom(dim_v, degree), 0);
}

ExteriorVector ExteriorVector::basis(Field f, unsigned dim_v, const MultiIndex& mi) {
    ExteriorVector v(std::move(f), dim_v, (unsigned)mi.size());
    v.c_[mi_rank(dim_v, mi)] = 1;
    return v;
}

ExteriorVector ExteriorVector::operator+(const ExteriorVector& o) const {
    require(dim_v_ == o.dim_v_ && degree_ == o.degree_ && f_->same(*o.f_),
            Err::IncompatibleFields, "exterior sum shape mismatch");
    ExteriorVector r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->add(c_[i], o.c_[i]);
    return r;
}

ExteriorVector ExteriorVector::operator-(const ExteriorVector& o) const {
    ExteriorVector n = o.scaled(f_->neg(1));
    return *this + n;
}

ExteriorVector ExteriorVector::scaled(uint64_t c) const {
    ExteriorVector r = *this;
    for (auto& x : r.c_) x = f_->mul(x, c);
    return r;
}

bool ExteriorVector::operator==(const ExteriorVector& o) const {
    return dim_v_ == o.dim_v_ && degree_ == o.degree_ && c_ == o.c_;
}

bool ExteriorVector::is_zero() const {
    for (uint64_t x : c_)
        if (x) return false;
    return true;
}

FE ExteriorVector::top_coefficient() const {
    require(degree_ == dim_v_, Err::DegreeOverflow, "top coefficient of non-top form");
    return FE(f_, c_[0]);
}

namespace {

ExteriorVector wedge_impl(const ExteriorVector& u, const ExteriorVector& v, bool with_signs) {
    require(u.dim_v() == v.dim_v() && u.field()->same(*v.field()), Err::IncompatibleFields,
            "wedge of vectors over different spaces");
    unsigned n = u.dim_v(), a = u.degree(), b = v.degree();
    require(a + b <= n, Err::DegreeOverflow, "wedge degree exceeds dim V");
    const auto& f = *u.field();
    ExteriorVector r(u.field(), n, a + b);
    for (size_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        MultiIndex I = mi_unrank(n, a, i);
        for (size_t j = 0; j < v.size(); ++j) {
            if (!v[j]) continue;
            MultiIndex J = mi_unrank(n, b, j);
            // disjointness check + merge
            MultiIndex m;
            m.reserve(a + b);
            std::merge(I.begin(), I.end(), J.begin(), J.end(), std::back_inserter(m));
            bool repeated = false;
            for (size_t t = 1; t < m.size(); ++t)
                if (m[t] == m[t - 1]) repeated = true;
            if (repeated) continue;
            uint64_t c = f.mul(u[i], v[j]);
            if (with_signs && shuffle_sign(I, J) < 0) c = f.neg(c);
            size_t idx = mi_rank(n, m);
            r[idx] = f.add(r[idx], c);
        }
    }
    return r;
}

} // namespace

ExteriorVector wedge_generic(const ExteriorVector& u, const ExteriorVector& v) {
    return wedge_impl(u, v, true);
}

ExteriorVector wedge(const ExteriorVector& u, const ExteriorVector& v) {
    return wedge_impl(u, v, u.field()->p() != 2);
}

FE divided_square(const ExteriorVector& u) {
    unsigned n = u.dim_v(), m = u.degree();
    const auto& f = *u.field();
    require(n == 2 * m, Err::UnsupportedShape, "divided square needs dim V = 2m");
    if (m % 2 == 1)
        require(f.p() == 2, Err::OddDegreeWrongCharacteristic,
                "divided square for odd m is defined only in characteristic 2");
    uint64_t acc = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        MultiIndex I = mi_unrank(n, m, i);
        MultiIndex J = mi_complement(n, I);
        size_t j = mi_rank(n, J);
        if (i >= j) continue; // each complementary pair once, I before J
        if (!u[j]) continue;
        uint64_t c = f.mul(u[i], u[j]);
        if (f.p() != 2 && shuffle_sign(I, J) < 0) c = f.neg(c);
        acc = f.add(acc, c);
    }
    return FE(u.field(), acc);
}

FE assoc_bilinear(const ExteriorVector& u, const ExteriorVector& v) {
    unsigned n = u.dim_v(), m = u.degree();
    require(n == 2 * m && v.degree() == m, Err::UnsupportedShape,
            "associated bilinear form needs two middle-degree vectors");
    if (m % 2 == 1)
        require(u.field()->p() == 2, Err::OddDegreeWrongCharacteristic,
                "associated form for odd m is defined only in characteristic 2");
    return wedge(u, v).top_coefficient();
}

Matrix mult_matrix(const ExteriorVector& xi, unsigned k) {
    require(xi.degree() == 1, Err::UnsupportedShape, "mult_matrix needs a degree-1 vector");
    unsigned n = xi.dim_v();
    require(k + 1 <= n, Err::DegreeOverflow, "mult_matrix degree overflow");
    const auto& f = *xi.field();
    Matrix m(xi.field(), binom(n, k + 1), binom(n, k));
    for (size_t j = 0; j < m.cols(); ++j) {
        MultiIndex J = mi_unrank(n, k, j);
        for (unsigned i = 0; i < n; ++i) {
            uint64_t c = xi[i];
            if (!c) continue;
            if (std::find(J.begin(), J.end(), (uint8_t)i) != J.end()) continue;
            MultiIndex T = J;
            T.insert(std::upper_bound(T.begin(), T.end(), (uint8_t)i), (uint8_t)i);
            size_t before = 0;
            for (uint8_t t : J)
                if (t < i) ++before;
            if (f.p() != 2 && before % 2) c = f.neg(c);
            size_t r = mi_rank(n, T);
            m(r, j) = f.add(m(r, j), c);
        }
    }
    return m;
}

Matrix induced_matrix(const Matrix& g, unsigned m) {
    require(g.rows() == g.cols(), Err::DimensionMismatch, "induced matrix needs square input");
    unsigned n = (unsigned)g.rows();
    const auto& f = *g.field();
    size_t nb = binom(n, m);
    Matrix r(g.field(), nb, nb);
    for (size_t cj = 0; cj < nb; ++cj) {
        MultiIndex S = mi_unrank(n, m, cj);
        for (size_t ri = 0; ri < nb; ++ri) {
            MultiIndex T = mi_unrank(n, m, ri);
            // det of the m x m minor g[T, S] by elimination
            Matrix sub(g.field(), m, m);
            for (unsigned a = 0; a < m; ++a)
                for (unsigned b = 0; b < m; ++b) sub(a, b) = g(T[a], S[b]);
            uint64_t det = 1;
            bool zero = false;
            for (unsigned c = 0; c < m && !zero; ++c) {
                unsigned piv = c;
                while (piv < m && sub(piv, c) == 0) ++piv;
                if (piv == m) {
                    zero = true;
                    break;
                }
                if (piv != c) {
                    for (unsigned j2 = 0; j2 < m; ++j2) std::swap(sub(piv, j2), sub(c, j2));
                    det = f.neg(det);
                }
                det = f.mul(det, sub(c, c));
                uint64_t ip = f.inv(sub(c, c));
                for (unsigned rr = c + 1; rr < m; ++rr) {
                    uint64_t v = f.mul(sub(rr, c), ip);
                    if (!v) continue;
                    for (unsigned j2 = c; j2 < m; ++j2)
                        sub(rr, j2) = f.sub(sub(rr, j2), f.mul(v, sub(c, j2)));
                }
            }
            r(ri, cj) = zero ? 0 : det;
        }
    }
    return r;
}

size_t quad_pair_index(size_t n_basis, size_t a, size_t b) {
    // pairs (a <= b) in row-major upper-triangular order
    return a * n_basis - a * (a - 1) / 2 + (b - a);
}

namespace {

// incremental GF(2) RREF on bit rows
struct BitEchelon {
    size_t ncols, words;
    std::vector<std::vector<uint64_t>> rows; // kept fully reduced
    std::vector<size_t> pivot;               // pivot column per row, increasing

    explicit BitEchelon(size_t n) : ncols(n), words((n + 63) / 64) {}

    static int lead_bit(const std::vector<uint64_t>& r) {
        for (size_t w = 0; w < r.size(); ++w)
            if (r[w]) return (int)(w * 64 + __builtin_ctzll(r[w]));
        return -1;
    }

    void insert(std::vector<uint64_t> r) {
        for (size_t i = 0; i < rows.size(); ++i) {
            size_t p = pivot[i];
            if ((r[p / 64] >> (p % 64)) & 1)
                for (size_t w = 0; w < words; ++w) r[w] ^= rows[i][w];
        }
        int lb = lead_bit(r);
        if (lb < 0) return;
        for (size_t i = 0; i < rows.size(); ++i) {
            if ((rows[i][lb / 64] >> (lb % 64)) & 1)
                for (size_t w = 0; w < words; ++w) rows[i][w] ^= r[w];
        }
        size_t at = 0;
        while (at < pivot.size() && pivot[at] < (size_t)lb) ++at;
        rows.insert(rows.begin() + at, std::move(r));
        pivot.insert(pivot.begin() + at, (size_t)lb);
    }

    size_t rank() const { return rows.size(); }

    // kernel vector for the first non-pivot column
    std::vector<uint8_t> kernel_generator() const {
        std::vector<uint8_t> g(ncols, 0);
        size_t pi = 0, fc = ncols;
        for (size_t c = 0; c < ncols; ++c) {
            if (pi < pivot.size() && pivot[pi] == c) {
                ++pi;
            } else {
                fc = c;
                break;
            }
        }
        if (fc == ncols) return g; // trivial kernel
        g[fc] = 1;
        for (size_t i = 0; i < rows.size(); ++i) g[pivot[i]] = (rows[i][fc / 64] >> (fc % 64)) & 1;
        return g;
    }
};

} // namespace

UniquenessResult divided_square_uniqueness(unsigned m) {
    require(m == 3 || m == 4, Err::UnsupportedShape, "uniqueness system exposed for m in {3,4}");
    unsigned n = 2 * m;
    Field f2 = FieldSpec::make(2, 1);
    const size_t nb = binom(n, m);          // dim Lambda^m V
    const size_t nw = binom(n, m - 1);      // dim Lambda^{m-1} V
    const size_t unknowns = nb * (nb + 1) / 2;

    BitEchelon ech(unknowns);
    auto add_condition = [&](const ExteriorVector& v) {
        std::vector<uint64_t> row((unknowns + 63) / 64, 0);
        bool any = false;
        for (size_t a = 0; a < nb; ++a) {
            if (!v[a]) continue;
            for (size_t b = a; b < nb; ++b) {
                if (!v[b]) continue;
                size_t idx = quad_pair_index(nb, a, b);
                row[idx / 64] ^= 1ULL << (idx % 64);
                any = true;
            }
        }
        if (any) ech.insert(std::move(row));
    };

    std::vector<ExteriorVector> xs;
    for (unsigned i = 0; i < n; ++i) xs.push_back(ExteriorVector::basis(f2, n, {(uint8_t)i}));
    std::vector<ExteriorVector> xsum;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) xsum.push_back(xs[i] + xs[j]);
    xs.insert(xs.end(), xsum.begin(), xsum.end());

    std::vector<ExteriorVector> ws;
    for (size_t a = 0; a < nw; ++a)
        ws.push_back(ExteriorVector::basis(f2, n, mi_unrank(n, m - 1, a)));
    std::vector<ExteriorVector> wsum;
    for (size_t a = 0; a < nw; ++a)
        for (size_t b = a + 1; b < nw; ++b) wsum.push_back(ws[a] + ws[b]);
    ws.insert(ws.end(), wsum.begin(), wsum.end());

    for (const auto& x : xs)
        for (const auto& w : ws) {
            ExteriorVector v = wedge(x, w);
            if (!v.is_zero()) add_condition(v);
        }

    UniquenessResult res;
    res.kernel_dim = unknowns - ech.rank();
    res.generator = ech.kernel_generator();
    return res;
}

} // namespace lagrangia
