#include "lagrangia/quadspace.hpp"

#include <algorithm>

#include "lagrangia/rng.hpp"

namespace lagrangia {

namespace {
size_t tri_index(size_t dim, size_t i, size_t j) {
    // i <= j, row-major upper triangle
    return i * dim - i * (i - 1) / 2 + (j - i);
}
} // namespace

uint64_t QuadraticSpace::qcoef(size_t i, size_t j) const {
    require(!signature_mode_, Err::UnsupportedShape, "q-table in signature mode");
    if (i > j) std::swap(i, j);
    return qtab_[tri_index(dim_, i, j)];
}

QuadraticSpace QuadraticSpace::from_qtable(Field f, size_t dim, std::vector<uint64_t> qtab) {
    require(dim % 2 == 0, Err::UnsupportedShape, "quadratic space dimension must be even");
    require(qtab.size() == dim * (dim + 1) / 2, Err::DimensionMismatch, "q-table size");
    QuadraticSpace s;
    s.f_ = std::move(f);
    s.dim_ = dim;
    s.qtab_ = std::move(qtab);
    s.gram_ = Matrix(s.f_, dim, dim);
    for (size_t i = 0; i < dim; ++i) {
        s.gram_(i, i) = s.f_->mul(2 % s.f_->p(), s.qtab_[tri_index(dim, i, i)]);
        for (size_t j = i + 1; j < dim; ++j) {
            uint64_t b = s.qtab_[tri_index(dim, i, j)];
            s.gram_(i, j) = b;
            s.gram_(j, i) = b;
        }
    }
    require(s.gram_.rank() == dim, Err::DegenerateForm, "associated bilinear form is degenerate");
    return s;
}

QuadraticSpace QuadraticSpace::hyperbolic(Field f, size_t n) {
    std::vector<uint64_t> qtab(2 * n * (2 * n + 1) / 2, 0);
    for (size_t i = 0; i < n; ++i) qtab[tri_index(2 * n, i, n + i)] = 1;
    return from_qtable(std::move(f), 2 * n, std::move(qtab));
}

QuadraticSpace QuadraticSpace::divided_square_space(Field f, unsigned m) {
    if (m % 2 == 1)
        require(f->p() == 2, Err::OddDegreeWrongCharacteristic,
                "divided square space for odd m needs characteristic 2");
    unsigned n = 2 * m;
    size_t nb = binom(n, m);
    std::vector<uint64_t> qtab(nb * (nb + 1) / 2, 0);
    for (size_t a = 0; a < nb; ++a) {
        MultiIndex A = mi_unrank(n, m, a);
        MultiIndex B = mi_complement(n, A);
        size_t b = mi_rank(n, B);
        if (a < b) {
            uint64_t c = 1;
            if (f->p() != 2 && shuffle_sign(A, B) < 0) c = f->neg(1);
            qtab[tri_index(nb, a, b)] = c;
        }
    }
    return from_qtable(std::move(f), nb, std::move(qtab));
}

QuadraticSpace QuadraticSpace::integer_signature(std::vector<int64_t> gram, size_t dim) {
    require(gram.size() == dim * dim, Err::DimensionMismatch, "integer Gram size");
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            require(gram[i * dim + j] == gram[j * dim + i], Err::UnsupportedShape,
                    "integer Gram must be symmetric");
    QuadraticSpace s;
    s.signature_mode_ = true;
    s.dim_ = dim;
    s.gram_int_ = std::move(gram);
    return s;
}

uint64_t QuadraticSpace::eval_q(std::span<const uint64_t> v) const {
    require(v.size() == dim_, Err::DimensionMismatch, "eval_q vector length");
    uint64_t acc = 0;
    for (size_t i = 0; i < dim_; ++i) {
        if (!v[i]) continue;
        for (size_t j = i; j < dim_; ++j) {
            if (!v[j]) continue;
            uint64_t q = qtab_[tri_index(dim_, i, j)];
            if (q) acc = f_->add(acc, f_->mul(q, f_->mul(v[i], v[j])));
        }
    }
    return acc;
}

uint64_t QuadraticSpace::eval_b(std::span<const uint64_t> x, std::span<const uint64_t> y) const {
    uint64_t acc = 0;
    for (size_t i = 0; i < dim_; ++i) {
        if (!x[i]) continue;
        uint64_t row = 0;
        for (size_t j = 0; j < dim_; ++j)
            if (y[j]) row = f_->add(row, f_->mul(gram_(i, j), y[j]));
        acc = f_->add(acc, f_->mul(x[i], row));
    }
    return acc;
}

bool QuadraticSpace::same(const QuadraticSpace& o) const {
    if (signature_mode_ != o.signature_mode_ || dim_ != o.dim_) return false;
    if (signature_mode_) return gram_int_ == o.gram_int_;
    return f_->same(*o.f_) && qtab_ == o.qtab_;
}

bool is_lagrangian(const Matrix& s, const QuadraticSpace& q) {
    if (q.signature_mode()) return false;
    if (s.cols() != q.n() || s.rows() != q.dim()) return false;
    std::vector<std::vector<uint64_t>> cols(s.cols());
    for (size_t c = 0; c < s.cols(); ++c) {
        cols[c].resize(s.rows());
        for (size_t r = 0; r < s.rows(); ++r) cols[c][r] = s(r, c);
    }
    const auto& f = *q.field();
    for (size_t i = 0; i < cols.size(); ++i) {
        if (q.eval_q(cols[i]) != 0) return false;
        for (size_t j = i + 1; j < cols.size(); ++j) {
            std::vector<uint64_t> sum(cols[i].size());
            for (size_t r = 0; r < sum.size(); ++r) sum[r] = f.add(cols[i][r], cols[j][r]);
            if (q.eval_q(sum) != 0) return false;
        }
    }
    return true;
}

Lagrangian::Lagrangian(QuadraticSpace space, Matrix basis) : space_(std::move(space)) {
    basis_ = basis.column_space_echelon();
    require(basis_.cols() == space_.n(), Err::WrongShape, "Lagrangian basis must have rank n");
    require(is_lagrangian(basis_, space_), Err::WrongShape,
            "subspace is not Lagrangian for the given form");
}

size_t intersection_dim(const Lagrangian& a, const Lagrangian& b) {
    require(a.space().same(b.space()), Err::IncompatibleFields,
            "intersection of Lagrangians in different spaces");
    size_t r = a.basis().hstack(b.basis()).rank();
    return 2 * a.space().n() - r;
}

int family_parity(const Lagrangian& l, const Lagrangian& ref) {
    return (int)(intersection_dim(l, ref) % 2);
}

namespace {

// dual-ize comp against ref so that b(u_i, wd_j) = delta_ij
std::pair<Matrix, Matrix> hyperbolic_pair(const Lagrangian& ref, const Lagrangian& comp) {
    const QuadraticSpace& sp = ref.space();
    require(sp.same(comp.space()), Err::IncompatibleFields, "ref and comp in different spaces");
    const size_t n = sp.n();
    require(ref.basis().hstack(comp.basis()).rank() == 2 * n, Err::NotComplementary,
            "ref and comp are not complementary");
    Matrix U = ref.basis(), W = comp.basis();
    Matrix P(sp.field(), n, n);
    std::vector<uint64_t> ucol(sp.dim()), wcol(sp.dim());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            for (size_t r = 0; r < sp.dim(); ++r) {
                ucol[r] = U(r, i);
                wcol[r] = W(r, j);
            }
            P(i, j) = sp.eval_b(ucol, wcol);
        }
    auto C = P.solve(Matrix::identity(sp.field(), n));
    require(C.has_value(), Err::NotComplementary, "pairing between ref and comp is singular");
    return {std::move(U), W * *C};
}

Lagrangian graph_from_pair(const QuadraticSpace& sp, const Matrix& U, const Matrix& Wd,
                           const Matrix& m) {
    const auto& f = *sp.field();
    const size_t n = sp.n();
    require(m.rows() == n && m.cols() == n, Err::DimensionMismatch, "chart matrix must be n x n");
    for (size_t i = 0; i < n; ++i) {
        require(m(i, i) == 0, Err::WrongShape, "chart matrix must be alternating (zero diagonal)");
        for (size_t j = i + 1; j < n; ++j)
            require(m(j, i) == f.neg(m(i, j)), Err::WrongShape,
                    "chart matrix must be alternating");
    }
    return Lagrangian(sp, U + Wd * m);
}

} // namespace

Lagrangian graph_lagrangian(const Lagrangian& ref, const Lagrangian& comp, const Matrix& m) {
    auto [U, Wd] = hyperbolic_pair(ref, comp);
    return graph_from_pair(ref.space(), U, Wd, m);
}

Lagrangian random_lagrangian(const Lagrangian& ref, const Lagrangian& comp, Family family,
                             uint64_t seed) {
    const QuadraticSpace& sp = ref.space();
    const size_t n = sp.n();
    const auto& f = *sp.field();
    auto [U, Wd] = hyperbolic_pair(ref, comp);

    if (family == Family::Opposite) {
        // one hyperbolic basis pair swapped: an improper isometry
        for (size_t r = 0; r < sp.dim(); ++r) std::swap(U(r, 0), Wd(r, 0));
    }

    SplitMix64 g(seed);
    Matrix M(sp.field(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            std::vector<uint32_t> coeffs(f.k());
            for (auto& c : coeffs) c = (uint32_t)g.mod(f.p());
            uint64_t v = f.encode(coeffs);
            M(i, j) = v;
            M(j, i) = f.neg(v);
        }

    Lagrangian out = graph_from_pair(sp, U, Wd, M);
    int want = (int)((n + (family == Family::Opposite ? 1 : 0)) % 2);
    require(family_parity(out, ref) == want, Err::WrongShape,
            "sampled Lagrangian landed in the wrong family");
    return out;
}

namespace {

// odd characteristic: iterated isotropic splitting with exhaustive search;
// the working form is a dense q-table qt[i][j] (i <= j used).
struct OddWitt {
    const FieldSpec& f;

    uint64_t eval_q(const std::vector<std::vector<uint64_t>>& qt,
                    const std::vector<uint64_t>& v) const {
        uint64_t acc = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            if (!v[i]) continue;
            for (size_t j = i; j < v.size(); ++j)
                if (v[j] && qt[i][j]) acc = f.add(acc, f.mul(qt[i][j], f.mul(v[i], v[j])));
        }
        return acc;
    }
    uint64_t eval_b(const std::vector<std::vector<uint64_t>>& qt, const std::vector<uint64_t>& x,
                    const std::vector<uint64_t>& y) const {
        std::vector<uint64_t> s(x.size());
        for (size_t i = 0; i < x.size(); ++i) s[i] = f.add(x[i], y[i]);
        return f.sub(f.sub(eval_q(qt, s), eval_q(qt, x)), eval_q(qt, y));
    }

    size_t index(std::vector<std::vector<uint64_t>> qt) const {
        size_t d = qt.size();
        if (d == 0) return 0;
        uint64_t total = 1;
        for (size_t i = 0; i < d; ++i) total *= f.q();
        std::vector<uint64_t> v(d);
        bool found = false;
        for (uint64_t code = 1; code < total && !found; ++code) {
            uint64_t c = code;
            for (size_t i = 0; i < d; ++i) {
                v[i] = c % f.q();
                c /= f.q();
            }
            if (eval_q(qt, v) == 0) found = true;
        }
        if (!found) return 0; // anisotropic
        // partner with b(v,w) != 0, normalized and made isotropic
        std::vector<uint64_t> w(d, 0);
        uint64_t bv = 0;
        for (size_t i = 0; i < d && !bv; ++i) {
            std::fill(w.begin(), w.end(), 0);
            w[i] = 1;
            bv = eval_b(qt, v, w);
        }
        require(bv != 0, Err::DegenerateForm, "no partner for isotropic vector");
        uint64_t s = f.inv(bv);
        for (auto& x : w) x = f.mul(x, s);
        uint64_t qw = eval_q(qt, w);
        for (size_t i = 0; i < d; ++i) w[i] = f.sub(w[i], f.mul(qw, v[i]));
        // orthogonal complement of the hyperbolic plane span(v,w)
        std::vector<std::vector<uint64_t>> rows(2, std::vector<uint64_t>(d));
        {
            std::vector<uint64_t> e(d, 0);
            for (size_t j = 0; j < d; ++j) {
                std::fill(e.begin(), e.end(), 0);
                e[j] = 1;
                rows[0][j] = eval_b(qt, v, e);
                rows[1][j] = eval_b(qt, w, e);
            }
        }
        std::vector<size_t> piv;
        size_t rank = 0;
        for (size_t c = 0; c < d && rank < 2; ++c) {
            size_t p = rank;
            while (p < 2 && rows[p][c] == 0) ++p;
            if (p == 2) continue;
            std::swap(rows[p], rows[rank]);
            uint64_t ip = f.inv(rows[rank][c]);
            for (size_t j = 0; j < d; ++j) rows[rank][j] = f.mul(rows[rank][j], ip);
            for (size_t r = 0; r < 2; ++r) {
                if (r == rank || !rows[r][c]) continue;
                uint64_t x = rows[r][c];
                for (size_t j = 0; j < d; ++j)
                    rows[r][j] = f.sub(rows[r][j], f.mul(x, rows[rank][j]));
            }
            piv.push_back(c);
            ++rank;
        }
        std::vector<std::vector<uint64_t>> basis;
        size_t pi = 0;
        for (size_t c = 0; c < d; ++c) {
            if (pi < piv.size() && piv[pi] == c) {
                ++pi;
                continue;
            }
            std::vector<uint64_t> k(d, 0);
            k[c] = 1;
            for (size_t i = 0; i < rank; ++i) k[piv[i]] = f.neg(rows[i][c]);
            basis.push_back(std::move(k));
        }
        size_t d2 = basis.size();
        std::vector<std::vector<uint64_t>> qt2(d2, std::vector<uint64_t>(d2, 0));
        for (size_t i = 0; i < d2; ++i) {
            qt2[i][i] = eval_q(qt, basis[i]);
            for (size_t j = i + 1; j < d2; ++j) qt2[i][j] = eval_b(qt, basis[i], basis[j]);
        }
        return 1 + index(std::move(qt2));
    }
};

WittClass witt_odd(const QuadraticSpace& q) {
    const auto& f = *q.field();
    require(f.q() <= 9 && q.dim() <= 8, Err::SizeCap, "isotropic search caps: q <= 9, dim <= 8");
    std::vector<std::vector<uint64_t>> qt(q.dim(), std::vector<uint64_t>(q.dim(), 0));
    for (size_t i = 0; i < q.dim(); ++i)
        for (size_t j = i; j < q.dim(); ++j) qt[i][j] = q.qcoef(i, j);
    OddWitt ow{f};
    WittClass w;
    w.rank = q.dim();
    w.witt_index = ow.index(qt);
    w.hyperbolic = w.witt_index == q.n();
    return w;
}

WittClass witt_char2(const QuadraticSpace& q) {
    const auto& f = *q.field();
    require(q.dim() % 2 == 0, Err::UnsupportedShape, "odd-dimensional char-2 form");
    size_t d = q.dim();
    std::vector<std::vector<uint64_t>> rem;
    for (size_t i = 0; i < d; ++i) {
        std::vector<uint64_t> e(d, 0);
        e[i] = 1;
        rem.push_back(std::move(e));
    }
    uint64_t arf_sum = 0;
    while (!rem.empty()) {
        std::vector<uint64_t> v = rem.front();
        rem.erase(rem.begin());
        size_t pi = rem.size();
        for (size_t i = 0; i < rem.size(); ++i)
            if (q.eval_b(v, rem[i]) != 0) {
                pi = i;
                break;
            }
        require(pi != rem.size(), Err::DegenerateForm, "symplectic reduction stalled");
        std::vector<uint64_t> u = rem[pi];
        rem.erase(rem.begin() + pi);
        uint64_t s = f.inv(q.eval_b(v, u));
        for (auto& x : u) x = f.mul(x, s);
        for (auto& x : rem) {
            uint64_t a = q.eval_b(x, u), b = q.eval_b(x, v);
            for (size_t r = 0; r < d; ++r)
                x[r] = f.add(x[r], f.add(f.mul(a, v[r]), f.mul(b, u[r])));
        }
        arf_sum = f.add(arf_sum, f.mul(q.eval_q(v), q.eval_q(u)));
    }
    WittClass w;
    w.rank = d;
    uint64_t arf_bit = f.trace(arf_sum);
    w.arf = arf_bit;
    w.hyperbolic = arf_bit == 0;
    w.witt_index = w.hyperbolic ? q.n() : q.n() - 1;
    return w;
}

WittClass witt_signature(const QuadraticSpace& q) {
    const size_t d = q.dim();
    std::vector<__int128> m(d * d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) m[i * d + j] = q.gram_int(i, j);
    std::vector<bool> done(d, false);
    int pos = 0, neg = 0;
    auto at = [&](size_t i, size_t j) -> __int128& { return m[i * d + j]; };
    size_t handled = 0;
    while (handled < d) {
        size_t piv = d;
        for (size_t i = 0; i < d; ++i)
            if (!done[i] && at(i, i) != 0) {
                piv = i;
                break;
            }
        if (piv != d) {
            __int128 dv = at(piv, piv);
            if (dv > 0) {
                ++pos;
            } else {
                ++neg;
            }
            done[piv] = true;
            ++handled;
            for (size_t k = 0; k < d; ++k) {
                if (done[k] || at(k, piv) == 0) continue;
                __int128 a = at(k, piv);
                // v_k <- dv * v_k - a * v_piv keeps symmetry, scales diag by dv^2 > 0
                for (size_t l = 0; l < d; ++l)
                    if (!done[l]) at(k, l) = dv * at(k, l) - a * at(piv, l);
                for (size_t l = 0; l < d; ++l)
                    if (!done[l]) at(l, k) = at(k, l);
            }
            continue;
        }
        size_t bi = d, bj = d;
        for (size_t i = 0; i < d && bi == d; ++i) {
            if (done[i]) continue;
            for (size_t j = i + 1; j < d; ++j)
                if (!done[j] && at(i, j) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
        }
        if (bi == d) break; // remaining block identically zero
        __int128 b = at(bi, bj);
        ++pos;
        ++neg; // hyperbolic plane
        done[bi] = done[bj] = true;
        handled += 2;
        for (size_t k = 0; k < d; ++k) {
            if (done[k]) continue;
            __int128 a = at(k, bj), c = at(k, bi);
            if (a == 0 && c == 0) continue;
            // v_k <- b*v_k - a*v_bi - c*v_bj
            for (size_t l = 0; l < d; ++l)
                if (!done[l]) at(k, l) = b * at(k, l) - a * at(bi, l) - c * at(bj, l);
            for (size_t l = 0; l < d; ++l)
                if (!done[l]) at(l, k) = at(k, l);
        }
    }
    require((size_t)(pos + neg) == d, Err::DegenerateForm, "integer Gram is singular");
    WittClass w;
    w.rank = d;
    w.signature = {pos, neg};
    w.hyperbolic = (pos == neg);
    w.witt_index = (size_t)std::min(pos, neg);
    return w;
}

} // namespace

WittClass witt_classify(const QuadraticSpace& q) {
    if (q.signature_mode()) return witt_signature(q);
    if (q.field()->p() == 2) return witt_char2(q);
    return witt_odd(q);
}

QuadraticSpace tensor_form(const Matrix& gram_e) {
    const Field& f = gram_e.field();
    size_t d = gram_e.rows();
    require(gram_e.cols() == d && d >= 1, Err::DimensionMismatch, "tensor form Gram must be square");
    require(70 * d <= 210, Err::SizeCap, "tensor form size cap: dim E <= 3");
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            require(gram_e(i, j) == gram_e(j, i), Err::UnsupportedShape,
                    "tensor form needs a symmetric Gram");
    const unsigned n = 8, m = 4;
    size_t nb = binom(n, m);
    size_t dim = d * nb;
    std::vector<uint64_t> qtab(dim * (dim + 1) / 2, 0);
    for (size_t a = 0; a < nb; ++a) {
        MultiIndex A = mi_unrank(n, m, a);
        MultiIndex B = mi_complement(n, A);
        size_t b = mi_rank(n, B);
        uint64_t eps = 1;
        if (f->p() != 2 && shuffle_sign(A, B) < 0) eps = f->neg(1);
        for (size_t i = 0; i < d; ++i) {
            if (a < b) {
                size_t ia = i * nb + a, ib = i * nb + b;
                qtab[tri_index(dim, ia, ib)] = f->mul(gram_e(i, i), eps);
            }
            for (size_t j = i + 1; j < d; ++j) {
                size_t ia = i * nb + a, jb = j * nb + b;
                qtab[tri_index(dim, std::min(ia, jb), std::max(ia, jb))] =
                    f->mul(gram_e(i, j), eps);
            }
        }
    }
    return QuadraticSpace::from_qtable(f, dim, std::move(qtab));
}

} // namespace lagrangia
