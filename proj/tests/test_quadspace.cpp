#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagrangia/quadspace.hpp"
#include "lagrangia/rng.hpp"

using namespace lagrangia;

namespace {

const MultiIndex kReisnerMonomials[] = {
    {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5}, {0, 4, 5},
    {1, 2, 4}, {1, 2, 5}, {1, 3, 5}, {2, 3, 4}, {3, 4, 5},
};

Matrix monomial_span(const Field& f, unsigned n, unsigned m,
                     const std::vector<MultiIndex>& mis) {
    Matrix b(f, binom(n, m), mis.size());
    for (size_t c = 0; c < mis.size(); ++c) b(mi_rank(n, mis[c]), c) = 1;
    return b;
}

// fiber W_xi = xi ^ Lambda^{m-1} V as a Lagrangian of the divided-square space
Lagrangian fiber(const QuadraticSpace& sp, const Field& f, unsigned m, unsigned coord) {
    auto xi = ExteriorVector::basis(f, 2 * m, {(uint8_t)coord});
    return Lagrangian(sp, mult_matrix(xi, m - 1).column_space_echelon());
}

std::vector<MultiIndex> monomials_containing(unsigned n, unsigned m, unsigned idx) {
    std::vector<MultiIndex> out;
    for (size_t r = 0; r < binom(n, m); ++r) {
        MultiIndex mi = mi_unrank(n, m, r);
        if (std::find(mi.begin(), mi.end(), (uint8_t)idx) != mi.end()) out.push_back(mi);
    }
    return out;
}

std::vector<MultiIndex> monomials_avoiding(unsigned n, unsigned m, unsigned idx) {
    std::vector<MultiIndex> out;
    for (size_t r = 0; r < binom(n, m); ++r) {
        MultiIndex mi = mi_unrank(n, m, r);
        if (std::find(mi.begin(), mi.end(), (uint8_t)idx) == mi.end()) out.push_back(mi);
    }
    return out;
}

} // namespace

TEST_CASE("hyperbolic normal form and coordinate Lagrangians") {
    Field f2 = FieldSpec::make(2, 1);
    for (size_t n : {2, 3, 5}) {
        auto sp = QuadraticSpace::hyperbolic(f2, n);
        Matrix first(f2, 2 * n, n);
        for (size_t i = 0; i < n; ++i) first(i, i) = 1;
        CHECK(is_lagrangian(first, sp));

        // x1 and x_{n+1} pair up: not isotropic as a pair
        Matrix bad(f2, 2 * n, n);
        bad(0, 0) = 1;
        bad(n, 1) = 1;
        for (size_t i = 2; i < n; ++i) bad(i, i) = 1;
        CHECK(!is_lagrangian(bad, sp));

        auto w = witt_classify(sp);
        CHECK(w.witt_index == n);
        CHECK(w.hyperbolic);
    }
}

TEST_CASE("Reisner monomial span is Lagrangian in the divided-square space") {
    Field f2 = FieldSpec::make(2, 1);
    auto sp = QuadraticSpace::divided_square_space(f2, 3);
    std::vector<MultiIndex> mis(std::begin(kReisnerMonomials), std::end(kReisnerMonomials));
    Matrix b = monomial_span(f2, 6, 3, mis);
    CHECK(is_lagrangian(b, sp));
    // exactly one of each complementary pair
    for (const auto& mi : mis) {
        MultiIndex c = mi_complement(6, mi);
        CHECK(std::find(mis.begin(), mis.end(), c) == mis.end());
    }
}

TEST_CASE("intersection dimensions of fibers and the Reisner span") {
    Field f2 = FieldSpec::make(2, 1);
    auto sp = QuadraticSpace::divided_square_space(f2, 3);
    auto w0 = fiber(sp, f2, 3, 0);
    auto w1 = fiber(sp, f2, 3, 1);
    CHECK(intersection_dim(w0, w0) == 10);
    CHECK(intersection_dim(w0, w1) == 4); // monomials containing both 0 and 1
    std::vector<MultiIndex> mis(std::begin(kReisnerMonomials), std::end(kReisnerMonomials));
    Lagrangian reisner(sp, monomial_span(f2, 6, 3, mis));
    CHECK(intersection_dim(w0, reisner) == 5); // five listed monomials contain 0

    CHECK(family_parity(w0, w0) == 0);
    CHECK(family_parity(w1, w0) == 0);      // same family
    CHECK(family_parity(reisner, w0) == 1); // opposite family
}

TEST_CASE("graph chart: zero matrix returns ref") {
    Field f2 = FieldSpec::make(2, 1);
    auto sp = QuadraticSpace::divided_square_space(f2, 3);
    auto ref = fiber(sp, f2, 3, 0);
    Lagrangian comp(sp, monomial_span(f2, 6, 3, monomials_avoiding(6, 3, 0)));
    Matrix zero(f2, 10, 10);
    auto l = graph_lagrangian(ref, comp, zero);
    CHECK(l.basis() == ref.basis());
    // non-complementary input is rejected
    CHECK_THROWS_AS(graph_lagrangian(ref, ref, zero), Error);
}

TEST_CASE("random Lagrangians: determinism, isotropy, family parity") {
    Field f2 = FieldSpec::make(2, 1);
    auto sp = QuadraticSpace::divided_square_space(f2, 3);
    auto ref = fiber(sp, f2, 3, 0);
    Lagrangian comp(sp, monomial_span(f2, 6, 3, monomials_avoiding(6, 3, 0)));

    auto a = random_lagrangian(ref, comp, Family::Opposite, 42);
    auto b = random_lagrangian(ref, comp, Family::Opposite, 42);
    CHECK(a.basis() == b.basis());

    for (uint64_t seed = 0; seed < 100; ++seed) {
        auto l = random_lagrangian(ref, comp, Family::Opposite, seed);
        CHECK(is_lagrangian(l.basis(), sp));
        CHECK(intersection_dim(l, ref) % 2 == 1);
    }
    // same-family samples have even pairwise parity relative to each other
    std::vector<Lagrangian> same;
    for (uint64_t seed = 1000; seed < 1200; ++seed)
        same.push_back(random_lagrangian(ref, comp, Family::Same, seed));
    for (size_t i = 0; i < same.size(); i += 17)
        for (size_t j = i; j < same.size(); j += 23)
            CHECK(intersection_dim(same[i], same[j]) % 2 == 0);
}

TEST_CASE("witt: anisotropic and signature examples") {
    // q = x^2 + y^2 over GF(3): anisotropic (all 8 nonzero vectors check)
    Field f3 = FieldSpec::make(3, 1);
    auto sp = QuadraticSpace::from_qtable(f3, 2, {1, 0, 1});
    size_t isotropic = 0;
    for (uint64_t x = 0; x < 3; ++x)
        for (uint64_t y = 0; y < 3; ++y) {
            std::vector<uint64_t> v{x, y};
            if ((x || y) && sp.eval_q(v) == 0) ++isotropic;
        }
    CHECK(isotropic == 0);
    auto w = witt_classify(sp);
    CHECK(w.witt_index == 0);
    CHECK(!w.hyperbolic);

    // positive definite integer Gram diag(2,2)
    auto sig = witt_classify(QuadraticSpace::integer_signature({2, 0, 0, 2}, 2));
    REQUIRE(sig.signature.has_value());
    CHECK(*sig.signature == std::pair<int, int>{2, 0});
    CHECK(!sig.hyperbolic);

    // hyperbolic integer plane
    auto hyp = witt_classify(QuadraticSpace::integer_signature({0, 1, 1, 0}, 2));
    CHECK(*hyp.signature == std::pair<int, int>{1, 1});
    CHECK(hyp.hyperbolic);

    // indefinite 4x4 with zero diagonal entries mixed in
    auto mix = witt_classify(QuadraticSpace::integer_signature(
        {0, 3, 0, 0, 3, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 5}, 4));
    CHECK(*mix.signature == std::pair<int, int>{2, 2});
    CHECK(mix.hyperbolic);
}

TEST_CASE("witt index of block forms matches the isotropy-count oracle") {
    // point counts of nondegenerate even-dim quadrics over GF(q):
    // plus type (index n): q^{2n-1} + q^n - q^{n-1};
    // minus type (index n-1): q^{2n-1} - q^n + q^{n-1} (zero vector included)
    auto count_isotropic = [](const QuadraticSpace& sp) {
        uint64_t total = 1, q = sp.field()->q();
        for (size_t i = 0; i < sp.dim(); ++i) total *= q;
        size_t cnt = 0;
        std::vector<uint64_t> v(sp.dim());
        for (uint64_t code = 0; code < total; ++code) {
            uint64_t c = code;
            for (size_t i = 0; i < sp.dim(); ++i) {
                v[i] = c % q;
                c /= q;
            }
            if (sp.eval_q(v) == 0) ++cnt;
        }
        return cnt;
    };
    auto predicted = [](uint64_t q, size_t n, size_t witt) {
        uint64_t qn = 1, qn1 = 1, q2n1 = 1;
        for (size_t i = 0; i < n; ++i) qn *= q;
        for (size_t i = 0; i + 1 < n; ++i) qn1 *= q;
        for (size_t i = 0; i + 1 < 2 * n; ++i) q2n1 *= q;
        return witt == n ? q2n1 + qn - qn1 : q2n1 - qn + qn1;
    };

    for (uint32_t p : {2u, 3u}) {
        Field f = FieldSpec::make(p, 1);
        for (size_t hyp_planes : {1, 2}) {
            // hyperbolic block orthogonal to an anisotropic plane
            // char 2: x^2+xy+y^2 is anisotropic; char 3: x^2+y^2 is
            size_t dim = 2 * hyp_planes + 2;
            size_t n = dim / 2;
            std::vector<uint64_t> qtab(dim * (dim + 1) / 2, 0);
            auto tri = [&](size_t i, size_t j) { return i * dim - i * (i - 1) / 2 + (j - i); };
            for (size_t i = 0; i < hyp_planes; ++i) qtab[tri(2 * i, 2 * i + 1)] = 1;
            size_t a = 2 * hyp_planes;
            qtab[tri(a, a)] = 1;
            qtab[tri(a + 1, a + 1)] = 1;
            if (p == 2) qtab[tri(a, a + 1)] = 1;
            auto sp = QuadraticSpace::from_qtable(f, dim, qtab);
            auto w = witt_classify(sp);
            CHECK(w.witt_index == hyp_planes); // anisotropic part contributes 0
            CHECK(count_isotropic(sp) == predicted(f->q(), n, w.witt_index));
        }
    }
}

TEST_CASE("polarization consistency: stored Gram equals b(x,y) on basis pairs") {
    Field f3 = FieldSpec::make(3, 1);
    auto sp = QuadraticSpace::from_qtable(f3, 4, {1, 2, 0, 1, 2, 1, 0, 1, 0, 2});
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            std::vector<uint64_t> ei(4, 0), ej(4, 0);
            ei[i] = 1;
            ej[j] = 1;
            std::vector<uint64_t> s(4);
            for (size_t r = 0; r < 4; ++r) s[r] = f3->add(ei[r], ej[r]);
            uint64_t b = f3->sub(f3->sub(sp.eval_q(s), sp.eval_q(ei)), sp.eval_q(ej));
            if (i == j) b = f3->mul(2, sp.eval_q(ei)); // q(2e) - 2q(e) = 2q(e)
            CHECK(sp.gram()(i, j) == b);
        }
}

TEST_CASE("is_lagrangian is invariant under column operations") {
    Field f2 = FieldSpec::make(2, 1);
    auto sp = QuadraticSpace::divided_square_space(f2, 3);
    std::vector<MultiIndex> mis(std::begin(kReisnerMonomials), std::end(kReisnerMonomials));
    Matrix b = monomial_span(f2, 6, 3, mis);
    // add column 0 to column 1, swap two columns
    for (size_t r = 0; r < b.rows(); ++r) b(r, 1) = f2->add(b(r, 1), b(r, 0));
    for (size_t r = 0; r < b.rows(); ++r) std::swap(b(r, 3), b(r, 7));
    CHECK(is_lagrangian(b, sp));
}

TEST_CASE("tensor form") {
    // d = 1, b = (1): the divided square itself
    Field f2 = FieldSpec::make(2, 1);
    Matrix one(f2, 1, 1);
    one(0, 0) = 1;
    auto q1 = tensor_form(one);
    auto dsq = QuadraticSpace::divided_square_space(f2, 4);
    CHECK(q1.same(dsq));

    // d = 2, identity over GF(3): E (x) L is Lagrangian for monomial L
    Field f3 = FieldSpec::make(3, 1);
    auto q2 = tensor_form(Matrix::identity(f3, 2));
    CHECK(q2.dim() == 140);
    auto mis = monomials_containing(8, 4, 0);
    REQUIRE(mis.size() == 35);
    Matrix el(f3, 140, 70);
    for (size_t c = 0; c < 35; ++c) {
        size_t row = mi_rank(8, mis[c]);
        el(row, c) = 1;          // e_1 (x) u_c
        el(70 + row, 35 + c) = 1; // e_2 (x) u_c
    }
    CHECK(is_lagrangian(el, q2));

    // random combinations inside E (x) L stay isotropic
    SplitMix64 g(77);
    for (int it = 0; it < 20; ++it) {
        std::vector<uint64_t> v(140, 0);
        for (const auto& mi : mis) {
            size_t row = mi_rank(8, mi);
            v[row] = g.mod(3);
            v[70 + row] = g.mod(3);
        }
        CHECK(q2.eval_q(v) == 0);
    }
}
