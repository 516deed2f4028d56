#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "lagrangia/loci.hpp"
#include "lagrangia/rng.hpp"

using namespace lagrangia;

namespace {

ProjPoint unit_point(const Field& f, unsigned dim, unsigned i) {
    std::vector<uint64_t> c(dim, 0);
    c[i] = 1;
    return ProjPoint(f, std::move(c));
}

} // namespace

TEST_CASE("fiber Lagrangians: dimensions, isotropy, one family") {
    Field f2 = FieldSpec::make(2, 1);
    auto w0 = fiber_lagrangian(unit_point(f2, 6, 0), 3);
    CHECK(w0.basis().cols() == 10);
    CHECK(is_lagrangian(w0.basis(), w0.space()));
    auto w1 = fiber_lagrangian(unit_point(f2, 6, 1), 3);
    CHECK(intersection_dim(w0, w1) == 4);
    CHECK(family_parity(w1, w0) == 0);

    // P^7 fiber over GF(3): Lagrangian in any characteristic for m = 4
    Field f3 = FieldSpec::make(3, 1);
    auto v0 = fiber_lagrangian(unit_point(f3, 8, 0), 4);
    CHECK(v0.basis().cols() == 35);
    CHECK(is_lagrangian(v0.basis(), v0.space()));

    SplitMix64 g(1);
    Field f16 = FieldSpec::make(2, 4);
    std::vector<Lagrangian> fibers;
    for (int it = 0; it < 10; ++it) {
        std::vector<uint64_t> c(6);
        do {
            for (auto& x : c) x = g.mod(16);
        } while (std::all_of(c.begin(), c.end(), [](uint64_t v) { return v == 0; }));
        fibers.push_back(fiber_lagrangian(ProjPoint(f16, c), 3));
    }
    for (size_t i = 0; i < fibers.size(); ++i)
        for (size_t j = i + 1; j < fibers.size(); ++j)
            CHECK(intersection_dim(fibers[i], fibers[j]) % 2 == 0);
}

TEST_CASE("locus membership at Reisner points, three routes agree") {
    Field f2 = FieldSpec::make(2, 1);
    Lagrangian w = reisner_lagrangian();

    auto m0 = locus_membership(unit_point(f2, 6, 0), w, 3);
    CHECK(m0.dim == 5);
    CHECK(m0.member);

    // route 2: generic intersection_dim through the fiber Lagrangian
    auto w_e0 = fiber_lagrangian(unit_point(f2, 6, 0), 3);
    CHECK(intersection_dim(w_e0, w) == 5);

    // route 3: rank of the stacked 20 x 25 matrix [xi ^ Lambda^2 | W]
    ExteriorVector e0 = ExteriorVector::basis(f2, 6, {0});
    Matrix stacked = mult_matrix(e0, 2).hstack(w.basis());
    CHECK(stacked.rows() == 20);
    CHECK(stacked.cols() == 25);
    CHECK(stacked.rank() == 15); // dim(W_xi + W) = 15, so intersection 5

    // (1:1:0:0:0:0): membership iff the point lies on the union of planes
    std::vector<uint64_t> c{1, 1, 0, 0, 0, 0};
    ProjPoint p(f2, c);
    auto mp = locus_membership(p, w, 3);
    Ideal sr = stanley_reisner_ideal(reisner_facets(), 6);
    bool on_union = true;
    for (const auto& g : sr.gens())
        if (g.eval(p.coords()) != 0) on_union = false;
    CHECK(mp.member == on_union);
    CHECK(mp.member); // {0,1} is an edge, so the point lies on a face plane
}

TEST_CASE("parity law across families") {
    Field f2 = FieldSpec::make(2, 1);
    Lagrangian rei = reisner_lagrangian();
    SplitMix64 g(5150);
    Field f16 = FieldSpec::make(2, 4);
    for (int it = 0; it < 50; ++it) {
        std::vector<uint64_t> c(6);
        do {
            for (auto& x : c) x = g.mod(16);
        } while (std::all_of(c.begin(), c.end(), [](uint64_t v) { return v == 0; }));
        ProjPoint xi(f16, c);
        auto mm = locus_membership(xi, rei, 3);
        CHECK(mm.dim % 2 == 1);
        CHECK(mm.dim <= 5);
        // same-family W (a fiber) gives even intersections: the parity guard throws
        auto fib = fiber_lagrangian(unit_point(f2, 6, 0), 3);
        CHECK_THROWS_AS(locus_membership(xi, fib, 3), Error);
    }
}

TEST_CASE("census of the Reisner locus matches the monomial-ideal zero set") {
    Lagrangian w = reisner_lagrangian();
    Ideal sr = stanley_reisner_ideal(reisner_facets(), 6);
    for (unsigned k : {1u, 2u}) {
        auto census = enumerate_locus(w, k, p5_ambient());
        Field ext = FieldSpec::make(2, k);
        FieldEmbedding emb(sr.ring()->field, ext);
        // direct enumeration oracle over all points of P^5(GF(2^k))
        std::set<std::vector<uint64_t>> expect;
        uint64_t q = ext->q();
        std::vector<uint64_t> c(6, 0);
        uint64_t total = 1;
        for (int i = 0; i < 6; ++i) total *= q;
        for (uint64_t code = 1; code < total; ++code) {
            uint64_t t = code;
            for (int i = 5; i >= 0; --i) {
                c[i] = t % q;
                t /= q;
            }
            bool vanishes = true;
            for (const auto& g : sr.gens())
                if (g.eval(c, &emb) != 0) vanishes = false;
            if (vanishes) expect.insert(ProjPoint(ext, c).coords());
        }
        std::set<std::vector<uint64_t>> got;
        for (const auto& p : census) got.insert(p.coords());
        CHECK(got == expect);
        if (k == 1) CHECK(census.size() == 31); // nonempty faces of the complex
    }
}

TEST_CASE("interpolation on Reisner recovers the ten non-face cubics") {
    Lagrangian w = reisner_lagrangian();
    auto res = interpolate_forms(w, p5_ambient());
    REQUIRE(res.gens.size() == 10);
    Ideal sr = stanley_reisner_ideal(reisner_facets(), 6);
    // both are reduced-echelon bases of the same 10-dim space of monomials
    std::set<std::string> got, expect;
    for (const auto& g : res.gens) got.insert(g.str());
    for (const auto& g : sr.gens()) expect.insert(g.str());
    CHECK(got == expect);
    CHECK(res.quadric_free);
    // kernel dimensions strictly decrease until stabilization
    for (size_t i = 1; i < res.census.kernel_dims.size(); ++i)
        CHECK(res.census.kernel_dims[i] <= res.census.kernel_dims[i - 1]);
    CHECK(res.census.counts[0] == 31);
}

TEST_CASE("quadric check control: one coordinate plane admits quadrics") {
    Field f4 = FieldSpec::make(2, 2);
    Ring r = make_ring(f4, 6);
    // all points of the plane x3 = x4 = x5 = 0 over GF(4)
    std::vector<ProjPoint> pts;
    for (uint64_t a = 0; a < 4; ++a)
        for (uint64_t b = 0; b < 4; ++b)
            for (uint64_t c = 0; c < 4; ++c) {
                if (!a && !b && !c) continue;
                std::vector<uint64_t> v{a, b, c, 0, 0, 0};
                pts.emplace_back(f4, v);
            }
    CHECK(!quadric_check_points(r, pts));
}

TEST_CASE("stanley-reisner corner cases") {
    // full simplex: zero ideal
    Ideal full = stanley_reisner_ideal({{0, 1, 2, 3}}, 4);
    CHECK(full.gens().empty());
    // two disjoint edges on 4 vertices: the cross monomials
    Ideal cross = stanley_reisner_ideal({{0, 1}, {2, 3}}, 4);
    std::set<std::string> got;
    for (const auto& g : cross.gens()) got.insert(g.str());
    CHECK(got == std::set<std::string>{"x0*x2", "x0*x3", "x1*x2", "x1*x3"});
    // facets read off the monomial list itself give the complement triples
    // (every vertex pair is an edge, so all minimal non-faces are cubic)
    Ideal dual = stanley_reisner_ideal(reisner_monomials(), 6);
    REQUIRE(dual.gens().size() == 10);
    for (const auto& g : dual.gens()) {
        MultiIndex t;
        for (uint8_t v = 0; v < 6; ++v)
            if (g.lead().m.e[v]) t.push_back(v);
        MultiIndex c = mi_complement(6, t);
        CHECK(std::find(reisner_monomials().begin(), reisner_monomials().end(), c) !=
              reisner_monomials().end());
    }
}

TEST_CASE("jacobian ranks on the Reisner surface") {
    Ideal sr = stanley_reisner_ideal(reisner_facets(), 6);
    Field f2 = FieldSpec::make(2, 1);
    // a point with full support in exactly one facet plane is smooth there
    std::vector<uint64_t> c{1, 1, 1, 0, 0, 0};
    ProjPoint p(f2, c);
    CHECK(jacobian_rank(sr.gens(), p) == 3);
    // the coordinate vertex lies on five planes; all partials vanish there
    CHECK(jacobian_rank(sr.gens(), unit_point(f2, 6, 0)) == 0);
    // off-locus points are rejected
    std::vector<uint64_t> bad{1, 1, 1, 1, 1, 1};
    CHECK_THROWS_AS(jacobian_rank(sr.gens(), ProjPoint(f2, bad)), Error);
}

TEST_CASE("euler characteristics of twisted cotangent powers") {
    CHECK(euler_char_omega(5, 1, 1) == 0);
    CHECK(euler_char_omega(5, 3, 0) == -1);
    CHECK(euler_char_omega(5, 0, 3) == 56); // chi(O(3)) = C(8,5)
    for (unsigned n = 1; n <= 7; ++n)
        for (unsigned p = 0; p <= n; ++p)
            for (long long t = -10; t <= 10; ++t) {
                long long lhs = euler_char_omega(n, p, t);
                long long rhs = euler_char_omega(n, n - p, -t);
                CHECK(lhs == (n % 2 ? -rhs : rhs));
            }
}

TEST_CASE("hilbert polynomials from resolution shapes") {
    RatPoly p5 = hilbert_polynomial_from_shape(p5_shape(), 5);
    REQUIRE(p5.c.size() == 3);
    CHECK(p5.c[0] == Rational{1, 1});
    CHECK(p5.c[1] == Rational{0, 1});
    CHECK(p5.c[2] == Rational{5, 1});

    RatPoly p7 = hilbert_polynomial_from_shape(p7_shape(), 7);
    auto expected = [](long long t) {
        auto cb = [](long long x, unsigned k) {
            __int128 num = 1;
            for (unsigned i = 0; i < k; ++i) num *= (x - (long long)i);
            for (unsigned i = 1; i <= k; ++i) num /= i;
            return (long long)num;
        };
        return 336 * cb(t + 3, 4) - 2520 * cb(t + 2, 3) + 9814 * cb(t + 1, 2) - 25571 * t + 49549;
    };
    CHECK(p7.c.size() == 5); // quartic
    for (long long t = -6; t <= 25; ++t) CHECK(p7.eval_int(t) == expected(t));

    RatPoly pt = hilbert_polynomial_from_shape(point_p3_shape(), 3);
    REQUIRE(pt.c.size() == 1);
    CHECK(pt.c[0] == Rational{1, 1});
    CHECK(pt.c[0].num % 2 == 1); // the parity obstruction: 1 = 2 chi is impossible
}

TEST_CASE("chern degrees of the degeneracy classes") {
    CHECK(chern_degree_omega(5, 3, 1) == 10);
    CHECK(chern_degree_omega(7, 4, 1) == 336);
    CHECK(chern_degree_omega(7, 4, 2) == 2672);
    CHECK(chern_degree_omega(7, 4, 3) == 9008);
    // (1000 d^3 + 8 d) / 3 for the first few d
    for (unsigned d = 1; d <= 3; ++d)
        CHECK(chern_degree_omega(7, 4, d) == (1000LL * d * d * d + 8 * d) / 3);
    // degree triangle: leading Hilbert coefficient matches degree / dim!
    RatPoly p5 = hilbert_polynomial_from_shape(p5_shape(), 5);
    CHECK(p5.c.back() == Rational{10 / 2, 1});
    RatPoly p7 = hilbert_polynomial_from_shape(p7_shape(), 7);
    CHECK(p7.c.back() == Rational{14, 1}); // 336 / 4!
}

TEST_CASE("pfaffian decision table") {
    // char-2 surface with odd h^1
    PfaffianInput a;
    a.n = 2;
    a.ell = 0;
    a.characteristic = 2;
    a.middle_dim = 1;
    auto da = pfaffian_decision(a);
    CHECK(!da.pfaffian);
    CHECK(da.clause == "(b)+(c)");

    // odd n is always Pfaffian
    PfaffianInput b;
    b.n = 3;
    b.ell = 12;
    b.characteristic = 0;
    auto db = pfaffian_decision(b);
    CHECK(db.pfaffian);
    CHECK(db.clause == "(i)");

    // real positive-definite fourfold
    PfaffianInput c;
    c.n = 4;
    c.ell = 24;
    c.characteristic = 0;
    c.middle_form = QuadraticSpace::integer_signature({1, 0, 0, 1}, 2);
    auto dc = pfaffian_decision(c);
    CHECK(!dc.pfaffian);
    CHECK(dc.clause == "(a)+(d)");

    // its complexification is hyperbolic, hence Pfaffian
    PfaffianInput d;
    d.n = 4;
    d.ell = 24;
    d.characteristic = 0;
    d.middle_form = QuadraticSpace::integer_signature({0, 1, 1, 0}, 2);
    auto dd = pfaffian_decision(d);
    CHECK(dd.pfaffian);
    CHECK(dd.clause == "(iii)");

    // n = 2 mod 4 away from characteristic 2
    PfaffianInput e;
    e.n = 6;
    e.ell = 2;
    e.characteristic = 5;
    CHECK(pfaffian_decision(e).clause == "(ii)");

    // even-even with no data is undecidable
    PfaffianInput f;
    f.n = 4;
    f.ell = 2;
    CHECK_THROWS_AS(pfaffian_decision(f), Error);
    f.middle_dim = 4; // even, still needs the form
    CHECK_THROWS_AS(pfaffian_decision(f), Error);
}
