#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lagrangia/frobenius.hpp"
#include "lagrangia/matrix.hpp"
#include "lagrangia/rng.hpp"

using namespace lagrangia;

namespace {

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

bool has_squarefree_terms(const Polynomial& p) {
    for (const auto& t : p.terms()) {
        bool squarefree = true;
        for (uint8_t e : t.m.e)
            if (e > 1) squarefree = false;
        if (squarefree) return true;
    }
    return false;
}

} // namespace

TEST_CASE("frobenius_ideal squares generators") {
    Ring r = make_ring(FieldSpec::make(2, 1), 2);
    auto x = Polynomial::variable(r, 0);
    Ideal i(r, {x});
    Ideal fi = frobenius_ideal(i);
    REQUIRE(fi.gens().size() == 1);
    CHECK(fi.gens()[0] == x * x);

    // F(I) is contained in I; squares of generators are members
    Ring r6 = make_ring(FieldSpec::make(2, 1), 6);
    Ideal rei = reisner_ideal(r6);
    Ideal frei = frobenius_ideal(rei);
    for (const auto& g : frei.gens()) CHECK(ideal_contains(rei, g));
    for (const auto& g : rei.gens()) CHECK(ideal_contains(frei, g * g));
}

TEST_CASE("frobenius_complex doubles degrees and stays a complex") {
    Ring r = make_ring(FieldSpec::make(2, 1), 3);
    Ideal i(r, {Polynomial::variable(r, 0), Polynomial::variable(r, 1),
                Polynomial::variable(r, 2)});
    Complex c = minimal_free_resolution(i);
    Complex fc = frobenius_complex(c);
    for (size_t k = 0; k < c.modules.size(); ++k)
        for (size_t a = 0; a < c.modules[k].rank(); ++a)
            CHECK(fc.modules[k].degrees[a] == 2 * c.modules[k].degrees[a]);
    for (size_t k = 0; k + 1 < fc.maps.size(); ++k)
        CHECK(compose(fc.maps[k], fc.maps[k + 1]).is_zero());
}

TEST_CASE("Reisner Frobenius resolution has the doubled degree shape") {
    Ring r = make_ring(FieldSpec::make(2, 1), 6);
    Complex c = minimal_free_resolution(reisner_ideal(r));
    Complex fc = frobenius_complex(c);
    CHECK(complex_fingerprint(fc) == "0 | 6^10 | 8^15 | 10^6 12 | 12");
    // exactness spot-check: Euler sum of F(C) against the Hilbert function of F(I)
    auto cb = [](long n, long k) {
        if (k < 0 || n < k) return 0L;
        long r2 = 1;
        for (long i2 = 1; i2 <= k; ++i2) r2 = r2 * (n - k + i2) / i2;
        return r2;
    };
    Ideal fi = fc.augmentation;
    for (int t = 0; t <= 12; ++t) {
        long acc = 0;
        for (size_t k = 0; k < fc.modules.size(); ++k)
            for (int d : fc.modules[k].degrees) acc += (k % 2 ? -1 : 1) * cb(t - d + 5, 5);
        CHECK(acc == hilbert_function(fi, t));
    }
}

TEST_CASE("Hasse invariant of Reisner's example is one (mu2)") {
    Ring r = make_ring(FieldSpec::make(2, 1), 6);
    HasseResult h = hasse_invariant(reisner_ideal(r));
    CHECK(h.hasse == 1);
    CHECK(h.hasse_str == "1");
    CHECK(h.classification == "mu2");
    CHECK(!h.extrapolated_convention);
    CHECK(h.fingerprint == "0 | 3^10 | 4^15 | 5^6 6 | 6");
    CHECK(h.frobenius_fingerprint == "0 | 6^10 | 8^15 | 10^6 12 | 12");
}

TEST_CASE("Hasse invariant is stable under generator permutation") {
    Ring r = make_ring(FieldSpec::make(2, 1), 6);
    std::vector<Polynomial> gens = reisner_ideal(r).gens();
    SplitMix64 g(808);
    for (int it = 0; it < 5; ++it) {
        for (size_t i = gens.size(); i > 1; --i) std::swap(gens[i - 1], gens[g.mod(i)]);
        HasseResult h = hasse_invariant(Ideal(r, gens));
        CHECK(h.hasse == 1);
    }
}

TEST_CASE("homotopy perturbations leave the Hasse coefficient unchanged") {
    Ring r = make_ring(FieldSpec::make(2, 1), 6);
    Ideal i = reisner_ideal(r);
    Complex c = minimal_free_resolution(i);
    Complex fc = frobenius_complex(c);
    GradedMap phi0(r, c.modules[0], fc.modules[0], {Polynomial::constant(r, 1)});
    auto phi = lift_chain_map(c, fc, phi0);

    Monomial sf;
    for (int v = 0; v < 6; ++v) sf.e[v] = 1;
    sf.deg = 6;
    Polynomial g0 = phi[4].at(0, 0);
    CHECK(g0.coeff(sf) == 1);

    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto pphi = perturb_lift(c, fc, phi, seed);
        // still a chain lift
        for (size_t k = 1; k < pphi.size(); ++k)
            CHECK(compose(c.maps[k - 1], pphi[k]) == compose(pphi[k - 1], fc.maps[k - 1]));
        Polynomial g1 = pphi[4].at(0, 0);
        CHECK(g1.coeff(sf) == 1);
        // corrections lie in the square-monomial subspace
        CHECK(!has_squarefree_terms(g1 - g0));
    }
}

TEST_CASE("Hasse invariant is invariant under unimodular coordinate changes") {
    Ring r = make_ring(FieldSpec::make(2, 1), 6);
    Ideal i = reisner_ideal(r);
    SplitMix64 g(60606);
    int done = 0;
    while (done < 10) {
        Matrix a(r->field, 6, 6);
        for (size_t x = 0; x < 6; ++x)
            for (size_t y = 0; y < 6; ++y) a(x, y) = g.mod(2);
        if (a.rank() < 6) continue; // over GF(2) invertible means det 1
        ++done;
        std::vector<Polynomial> gens;
        for (const auto& f : i.gens()) gens.push_back(f.substitute_linear(a));
        HasseResult h = hasse_invariant(Ideal(r, gens));
        CHECK(h.hasse == 1);
    }
}

TEST_CASE("classification plumbing") {
    HasseResult h;
    h.hasse = 0;
    h.classification = "alpha2";
    auto c = classify_enriques(h, true, true);
    CHECK(c.cls == "alpha2");
    CHECK(!c.degenerate);
    auto d = classify_enriques(h, true, false);
    CHECK(d.degenerate);
    CHECK(d.note.find("singular") != std::string::npos);
}

TEST_CASE("wrong-shape ideals are rejected") {
    Ring r = make_ring(FieldSpec::make(2, 1), 3);
    Ideal i(r, {Polynomial::variable(r, 0)});
    CHECK_THROWS_AS(hasse_invariant(i), Error);
}
