#include "lagrangia/frobenius.hpp"

#include <algorithm>
#include <sstream>

#include "lagrangia/rng.hpp"

namespace lagrangia {

Ideal frobenius_ideal(const Ideal& i) {
    const Ring& r = i.ring();
    require(r->field->p() > 0, Err::CharZero, "Frobenius needs positive characteristic");
    std::vector<Polynomial> powered;
    for (const auto& g : i.gens()) powered.push_back(g.frobenius_power());
    return Ideal(r, std::move(powered));
}

Complex frobenius_complex(const Complex& c) {
    const Ring& r = c.ring;
    uint32_t p = r->field->p();
    require(p > 0, Err::CharZero, "Frobenius needs positive characteristic");
    Complex out;
    out.ring = r;
    out.augmentation = frobenius_ideal(c.augmentation);
    for (const auto& m : c.modules) {
        GradedFreeModule fm;
        for (int d : m.degrees) fm.degrees.push_back(d * (int)p);
        out.modules.push_back(std::move(fm));
    }
    for (size_t i = 0; i < c.maps.size(); ++i) {
        const GradedMap& m = c.maps[i];
        std::vector<Polynomial> entries;
        entries.reserve(m.target().rank() * m.source().rank());
        for (size_t row = 0; row < m.target().rank(); ++row)
            for (size_t col = 0; col < m.source().rank(); ++col)
                entries.push_back(m.at(row, col).frobenius_power());
        out.maps.push_back(GradedMap(r, out.modules[i], out.modules[i + 1], std::move(entries)));
    }
    return out;
}

std::string complex_fingerprint(const Complex& c) {
    std::ostringstream os;
    for (size_t i = 0; i < c.modules.size(); ++i) {
        if (i) os << " | ";
        std::vector<int> degs = c.modules[i].degrees;
        std::sort(degs.begin(), degs.end());
        for (size_t a = 0; a < degs.size();) {
            size_t b = a;
            while (b < degs.size() && degs[b] == degs[a]) ++b;
            if (a) os << " ";
            os << degs[a];
            if (b - a > 1) os << "^" << (b - a);
            a = b;
        }
    }
    return os.str();
}

namespace {

void check_template(const Complex& c) {
    const Ring& r = c.ring;
    require(r->nvars == 6, Err::WrongShape, "Hasse template needs 6 variables");
    require(c.length() == 4, Err::WrongShape, "Hasse template needs resolution length 4");
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    require(sorted(c.modules[0].degrees) == std::vector<int>{0}, Err::WrongShape, "F0 shape");
    require(sorted(c.modules[1].degrees) == std::vector<int>(10, 3), Err::WrongShape, "F1 shape");
    require(sorted(c.modules[2].degrees) == std::vector<int>(15, 4), Err::WrongShape, "F2 shape");
    require(sorted(c.modules[3].degrees) == std::vector<int>{5, 5, 5, 5, 5, 5, 6}, Err::WrongShape,
            "F3 shape");
    require(sorted(c.modules[4].degrees) == std::vector<int>{6}, Err::WrongShape, "F4 shape");
}

} // namespace

HasseResult hasse_invariant(const Ideal& i) {
    return hasse_invariant(i, minimal_free_resolution(i));
}

HasseResult hasse_invariant(const Ideal& i, const Complex& c) {
    const Ring& r = i.ring();
    uint32_t p = r->field->p();
    check_template(c);
    Complex fc = frobenius_complex(c);

    std::vector<Polynomial> one{Polynomial::constant(r, 1)};
    GradedMap phi0(r, c.modules[0], fc.modules[0], std::move(one));
    auto phi = lift_chain_map(c, fc, phi0);

    const GradedMap& last = phi[4]; // R(-p s) -> R(-s)
    Polynomial g = last.at(0, 0);
    Monomial target;
    for (uint32_t v = 0; v < r->nvars; ++v) target.e[v] = (uint8_t)(p - 1);
    target.deg = (uint16_t)(r->nvars * (p - 1));
    uint64_t coeff = g.coeff(target);

    HasseResult res;
    res.hasse = coeff;
    res.hasse_str = r->field->to_string(coeff);
    res.classification = coeff != 0 ? "mu2" : "alpha2";
    res.g = std::move(g);
    res.fingerprint = complex_fingerprint(c);
    res.frobenius_fingerprint = complex_fingerprint(fc);
    res.extrapolated_convention = p != 2;
    return res;
}

EnriquesClass classify_enriques(const HasseResult& h, bool hilbert_matches, bool smooth_samples) {
    EnriquesClass ec;
    ec.cls = h.classification;
    ec.degenerate = !hilbert_matches || !smooth_samples;
    if (!hilbert_matches)
        ec.note = "Hilbert polynomial differs from 5t^2+1";
    else if (!smooth_samples)
        ec.note = "singular point detected among sampled census points";
    return ec;
}

namespace {

Polynomial random_homogeneous(const Ring& r, int degree, SplitMix64& g) {
    if (degree < 0) return Polynomial(r);
    std::vector<Term> terms;
    for (const auto& m : monomials_of_degree(r, (unsigned)degree)) {
        std::vector<uint32_t> coeffs(r->field->k());
        for (auto& c : coeffs) c = (uint32_t)g.mod(r->field->p());
        uint64_t v = r->field->encode(coeffs);
        if (v) terms.push_back({m, v});
    }
    return Polynomial(r, std::move(terms));
}

GradedMap random_map(const Ring& r, const GradedFreeModule& target, const GradedFreeModule& source,
                     SplitMix64& g) {
    std::vector<Polynomial> entries;
    entries.reserve(target.rank() * source.rank());
    for (size_t i = 0; i < target.rank(); ++i)
        for (size_t j = 0; j < source.rank(); ++j)
            entries.push_back(random_homogeneous(r, source.degrees[j] - target.degrees[i], g));
    return GradedMap(r, target, source, std::move(entries));
}

GradedMap map_sum(const GradedMap& a, const GradedMap& b) {
    const Ring& r = a.ring();
    std::vector<Polynomial> entries;
    entries.reserve(a.target().rank() * a.source().rank());
    for (size_t i = 0; i < a.target().rank(); ++i)
        for (size_t j = 0; j < a.source().rank(); ++j) entries.push_back(a.at(i, j) + b.at(i, j));
    return GradedMap(r, a.target(), a.source(), std::move(entries));
}

} // namespace

std::vector<GradedMap> perturb_lift(const Complex& target, const Complex& source,
                                    const std::vector<GradedMap>& phi, uint64_t seed) {
    SplitMix64 g(seed);
    const Ring& r = target.ring;
    size_t n = phi.size();
    // homotopies h_i : F'_i -> F_{i+1}, zero when out of range
    std::vector<GradedMap> h;
    for (size_t i = 0; i + 1 < n; ++i)
        h.push_back(random_map(r, target.modules[i + 1], source.modules[i], g));

    std::vector<GradedMap> out;
    for (size_t i = 0; i < n; ++i) {
        GradedMap cur = phi[i];
        if (i + 1 < n) cur = map_sum(cur, compose(target.maps[i], h[i]));       // d_{i+1} h_i
        if (i >= 1) cur = map_sum(cur, compose(h[i - 1], source.maps[i - 1]));  // h_{i-1} d'_i
        out.push_back(std::move(cur));
    }
    return out;
}

} // namespace lagrangia
