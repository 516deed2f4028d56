#pragma once

#include "lagrangia/resolution.hpp"

namespace lagrangia {

// ideal generated by the p-th powers of the generators
Ideal frobenius_ideal(const Ideal& i);

// every entry raised termwise to the p-th power, all degrees multiplied by p;
// a resolution of R/F(I)R by flatness of Frobenius over the regular ring
Complex frobenius_complex(const Complex& c);

struct HasseResult {
    uint64_t hasse = 0;         // field encoding of the coefficient; 0 <=> alpha2
    std::string hasse_str;      // serialized coefficient ("0", "1", "1+1*a", ...)
    std::string classification; // "mu2" when nonzero, "alpha2" otherwise
    Polynomial g;               // final lift component R(-p s) -> R(-s)
    std::string fingerprint;    // degree shape of the minimal resolution
    std::string frobenius_fingerprint;
    bool extrapolated_convention = false; // coefficient of (prod x_i)^{p-1}, p != 2
};

// The Frobenius-action computation: resolve R/I, apply Frobenius, lift the
// canonical surjection through both resolutions, and read the coefficient of
// (x_0 ... x_5)^{p-1} in the last component.  The resolution must match the
// 6-variable template (1; 10@3; 15@4; 6@5 + 1@6; 1@6).
HasseResult hasse_invariant(const Ideal& i);
// same, reusing an already-computed minimal resolution of R/I
HasseResult hasse_invariant(const Ideal& i, const Complex& resolution);

// classification given the surrounding pipeline evidence; degenerate runs
// still carry their Hasse value
struct EnriquesClass {
    std::string cls; // "mu2" | "alpha2"
    bool degenerate;
    std::string note;
};
EnriquesClass classify_enriques(const HasseResult& h, bool hilbert_matches, bool smooth_samples);

// A chain-homotopy perturbation of a lift of the canonical surjection:
// phi_i + d_{i+1} h_i + h_{i-1} d'_i with seeded random homogeneous h.
// Used to certify homotopy invariance of the Hasse coefficient.
std::vector<GradedMap> perturb_lift(const Complex& target, const Complex& source,
                                    const std::vector<GradedMap>& phi, uint64_t seed);

std::string complex_fingerprint(const Complex& c);

} // namespace lagrangia
