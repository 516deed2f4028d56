#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagrangia/polyring.hpp"
#include "lagrangia/matrix.hpp"
#include "lagrangia/rng.hpp"

using namespace lagrangia;

namespace {

Ring gf2_ring(uint32_t nvars) { return make_ring(FieldSpec::make(2, 1), nvars); }

// the ten non-face triples of the RP^2 triangulation (complements of faces)
const int kNonFaces[10][3] = {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5}, {0, 4, 5},
                              {1, 2, 4}, {1, 2, 5}, {1, 3, 5}, {2, 3, 4}, {3, 4, 5}};

Ideal reisner_ideal(const Ring& r) {
    std::vector<Polynomial> gens;
    for (auto& t : kNonFaces) {
        Monomial m;
        for (int v : t) m.e[v] = 1;
        m.deg = 3;
        gens.push_back(Polynomial::monomial(r, m));
    }
    return Ideal(r, std::move(gens));
}

Polynomial rand_poly(const Ring& r, unsigned maxdeg, SplitMix64& g) {
    std::vector<Term> ts;
    for (unsigned d = 0; d <= maxdeg; ++d)
        for (const auto& m : monomials_of_degree(r, d))
            if (g.mod(3) == 0) ts.push_back({m, 1 + g.mod(r->field->q() - 1)});
    return Polynomial(r, std::move(ts));
}

} // namespace

TEST_CASE("normal form basics") {
    Ring r = gf2_ring(2);
    auto x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
    CHECK(normal_form(x * x, std::vector<Polynomial>{x}).is_zero());
    CHECK(normal_form(x + y, std::vector<Polynomial>{x}) == y);
}

TEST_CASE("normal form is congruent to the input modulo the basis") {
    SplitMix64 g(5);
    Ring r = make_ring(FieldSpec::make(5, 1), 3);
    for (int it = 0; it < 25; ++it) {
        Polynomial f = rand_poly(r, 3, g);
        std::vector<Polynomial> basis{rand_poly(r, 2, g), rand_poly(r, 2, g)};
        basis.erase(std::remove_if(basis.begin(), basis.end(),
                                   [](const Polynomial& p) { return p.is_zero(); }),
                    basis.end());
        if (basis.empty()) continue;
        Polynomial nf = normal_form(f, basis);
        Ideal i(r, basis);
        CHECK(ideal_contains(i, f - nf));
    }
}

TEST_CASE("groebner: monomial ideals reduce to minimal generators") {
    Ring r = gf2_ring(2);
    auto x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
    Ideal i(r, {x * x, x * x * y, y});
    auto gb = i.groebner_basis();
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == x * x);
    CHECK(gb[1] == y);
}

TEST_CASE("groebner: {x - y, y^2} is already reduced") {
    Ring r = make_ring(FieldSpec::make(3, 1), 2);
    auto x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
    Ideal i(r, {x - y, y * y});
    auto gb = i.groebner_basis();
    REQUIRE(gb.size() == 2);
    // canonical output is sorted by leading monomial, descending
    CHECK(gb[0] == y * y);
    CHECK(gb[1] == x - y);
}

TEST_CASE("groebner is idempotent and order-stable") {
    SplitMix64 g(2718);
    Ring r = gf2_ring(3);
    for (int it = 0; it < 10; ++it) {
        std::vector<Polynomial> gens{rand_poly(r, 2, g), rand_poly(r, 2, g), rand_poly(r, 2, g)};
        gens.erase(std::remove_if(gens.begin(), gens.end(),
                                  [](const Polynomial& p) { return p.is_zero(); }),
                   gens.end());
        if (gens.empty()) continue;
        auto gb = Ideal(r, gens).groebner_basis();
        auto gb2 = Ideal(r, gb).groebner_basis();
        CHECK(gb == gb2);
    }
}

TEST_CASE("buchberger correctness oracle: every S-polynomial reduces to zero") {
    SplitMix64 g(31415);
    Ring r = gf2_ring(3);
    int done = 0;
    while (done < 50) {
        std::vector<Polynomial> gens;
        size_t cnt = 1 + g.mod(3);
        for (size_t i = 0; i < cnt; ++i) {
            Polynomial p = rand_poly(r, 2, g);
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        ++done;
        auto gb = Ideal(r, gens).groebner_basis();
        for (size_t i = 0; i < gb.size(); ++i)
            for (size_t j = i + 1; j < gb.size(); ++j) {
                Monomial l = mono_lcm(gb[i].lead().m, gb[j].lead().m);
                Polynomial s = gb[i].times_term(1, mono_div(l, gb[i].lead().m)) -
                               gb[j].times_term(1, mono_div(l, gb[j].lead().m));
                CHECK(normal_form(s, gb).is_zero());
        }
    }
}

TEST_CASE("hilbert function of the Reisner ideal and the face-count oracle") {
    Ring r = gf2_ring(6);
    Ideal i = reisner_ideal(r);
    CHECK(hilbert_function(i, 0) == 1);
    CHECK(hilbert_function(i, 1) == 6);
    CHECK(hilbert_function(i, 2) == 21);
    CHECK(hilbert_function(i, 3) == 46);
    // f-vector (6, 15, 10): h(t) = sum_i f_i C(t-1, i) for t >= 1
    auto cb = [](long n, long k) {
        if (k < 0 || n < k) return 0L;
        long r = 1;
        for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (int t = 1; t <= 12; ++t) {
        long expect = 6 * cb(t - 1, 0) + 15 * cb(t - 1, 1) + 10 * cb(t - 1, 2);
        CHECK(hilbert_function(i, t) == expect);
        CHECK(expect == 5 * t * t + 1); // the same surface numbers as the smooth case
    }
    // non-homogeneous input is rejected
    auto x = Polynomial::variable(r, 0);
    Ideal bad(r, {x + Polynomial::constant(r, 1)});
    CHECK_THROWS_AS(hilbert_function(bad, 2), Error);
}

TEST_CASE("ideal membership") {
    Ring r = gf2_ring(6);
    Ideal i = reisner_ideal(r);
    for (const auto& g : i.gens()) CHECK(ideal_contains(i, g));
    CHECK(!ideal_contains(i, Polynomial::constant(r, 1)));
    CHECK(!ideal_contains(i, Polynomial::variable(r, 0)));
}

TEST_CASE("polynomial strings round trip") {
    Ring r4 = make_ring(FieldSpec::make(2, 2), 3);
    SplitMix64 g(999);
    for (int it = 0; it < 40; ++it) {
        Polynomial p = rand_poly(r4, 3, g);
        CHECK(Polynomial::parse(r4, p.str()) == p);
    }
    Ring r = gf2_ring(3);
    Polynomial q = Polynomial::parse(r, "x0^2*x1 + x2 + 1");
    CHECK(q.terms().size() == 3);
    CHECK(q.str() == "x0^2*x1 + x2 + 1");
}

TEST_CASE("linear substitution and evaluation agree") {
    Ring r = make_ring(FieldSpec::make(5, 1), 3);
    SplitMix64 g(321);
    for (int it = 0; it < 20; ++it) {
        Polynomial f = rand_poly(r, 3, g);
        Matrix a(r->field, 3, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) a(i, j) = g.mod(5);
        Polynomial fa = f.substitute_linear(a);
        // evaluate both at a random point
        std::vector<uint64_t> pt{g.mod(5), g.mod(5), g.mod(5)};
        std::vector<uint64_t> apt(3, 0);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                apt[i] = r->field->add(apt[i], r->field->mul(a(i, j), pt[j]));
        CHECK(fa.eval(pt) == f.eval(apt));
    }
}

TEST_CASE("partial derivatives") {
    Ring r = make_ring(FieldSpec::make(3, 1), 2);
    auto x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
    Polynomial f = x * x * y + y; // d/dx = 2xy, d/dy = x^2 + 1
    CHECK(f.partial(0) == (x * y).scaled(2));
    CHECK(f.partial(1) == x * x + Polynomial::constant(r, 1));
    // char divides exponent: d/dx x^3 = 0 over GF(3)
    CHECK((x * x * x).partial(0).is_zero());
}

TEST_CASE("grevlex vs lex orders") {
    Ring rg = gf2_ring(3);
    Ring rl = make_ring(FieldSpec::make(2, 1), 3, MonOrder::Lex);
    // x0 x2 vs x1^2: grevlex compares by last variable (x0x2 < x1^2);
    // lex compares by first (x0x2 > x1^2)
    Monomial a = mono_mul(Monomial::var(0), Monomial::var(2));
    Monomial b = Monomial::var(1, 2);
    CHECK(mono_cmp(a, b, rg->order, 3) < 0);
    CHECK(mono_cmp(a, b, rl->order, 3) > 0);
}
