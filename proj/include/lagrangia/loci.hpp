#pragma once

#include <map>

#include "lagrangia/quadspace.hpp"
#include "lagrangia/polyring.hpp"

namespace lagrangia {

/// Point of P^{dimV-1}, normalized so the first nonzero coordinate is 1.
class ProjPoint {
  public:
    ProjPoint(Field f, std::vector<uint64_t> coords);
    const Field& field() const { return f_; }
    const std::vector<uint64_t>& coords() const { return x_; }
    size_t dim_v() const { return x_.size(); }

  private:
    Field f_;
    std::vector<uint64_t> x_;
};

// The two ambients of the construction.
struct Ambient {
    unsigned dim_v;            // 6 or 8
    unsigned m;                // middle degree: 3 or 4
    unsigned form_degree;      // 3 (cubics) or 10 (decics)
    size_t expected_gens;      // 10 or 35
    size_t stabilization_cap;  // kernel-dimension slack: 12 or 40
    const char* name;
};
const Ambient& p5_ambient();
const Ambient& p7_ambient();

// W_xi = xi ^ Lambda^{m-1} V, the fiber of the twisted cotangent subbundle,
// as a Lagrangian of the divided-square space over xi's field.
Lagrangian fiber_lagrangian(const ProjPoint& xi, unsigned m);

// Lagrangian over a larger field along the canonical embedding (divided
// square spaces only).
Lagrangian extend_lagrangian(const Lagrangian& w, const Field& tgt, unsigned m);

struct Membership {
    size_t dim;
    bool member; // dim >= 3
};
// dim(W_xi cap W); odd for valid W, even dims raise OddParityViolation
Membership locus_membership(const ProjPoint& xi, const Lagrangian& w, unsigned m);

// All normalized points of P^{dimV-1}(GF(2^ext_degree)) on the locus, in
// lexicographic coordinate order.  ext_degree <= 4.
std::vector<ProjPoint> enumerate_locus(const Lagrangian& w, unsigned ext_degree,
                                       const Ambient& amb);

struct LocusCensus {
    std::vector<unsigned> ext_degrees;
    std::vector<size_t> counts;
    std::vector<size_t> kernel_dims; // interpolation kernel after each stage
    Field last_field;
    std::vector<std::vector<uint64_t>> last_points; // locus points over last_field
};

struct InterpolationResult {
    std::vector<Polynomial> gens; // over the base field, reduced echelon basis
    bool quadric_free;            // no nonzero quadric through the census
    LocusCensus census;
};

// Forms of the ambient's degree over W's base field vanishing on the locus,
// interpolated over GF(2^k) for k = k0, 2 k0, ... until the kernel dimension
// stabilizes; asserts the ambient's expected generator count.
InterpolationResult interpolate_forms(const Lagrangian& w, const Ambient& amb);
std::vector<Polynomial> interpolate_cubics(const Lagrangian& w);

// true iff no nonzero quadric vanishes on the given census
bool quadric_check_points(const Ring& r, const std::vector<ProjPoint>& pts);

// squarefree monomial ideal of the minimal non-faces
Ideal stanley_reisner_ideal(const std::vector<MultiIndex>& facets, unsigned n_vertices);

// the ten-monomial Lagrangian of the nonclassical Enriques degeneration
Lagrangian reisner_lagrangian();
// its spanning exterior monomials, which are the minimal non-faces of the
// locus's triangulation ...
const std::vector<MultiIndex>& reisner_monomials();
// ... and the facets of that triangulation (the complementary triples)
const std::vector<MultiIndex>& reisner_facets();

// rank of the Jacobian of gens at a point of the locus (3 = smooth
// codimension-3 point); PointNotOnLocus when some generator is nonzero
size_t jacobian_rank(const std::vector<Polynomial>& gens, const ProjPoint& xi);

// chi(Omega^p_{P^n}(t)) via the truncated Koszul resolution
long long euler_char_omega(unsigned n, unsigned p, long long t);

struct Rational {
    long long num = 0, den = 1;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};
struct RatPoly {
    std::vector<Rational> c; // c[i] * t^i
    bool is_integral() const;
    long long eval_int(long long t) const;
};

struct ShapeTerm {
    unsigned omega_p; // 0 for the trivial line bundle
    int twist;
    long rank;
};
// one list of terms per homological level, F0 first
using ResolutionShape = std::vector<std::vector<ShapeTerm>>;

ResolutionShape p5_shape();      // 0 -> O(-6) -> Omega^3 -> O(-3)^10 -> O
ResolutionShape p7_shape();      // 0 -> O(-20) -> Omega^4(-6) -> O(-10)^35 -> O
ResolutionShape point_p3_shape(); // Koszul resolution of a point, twisted by -1

RatPoly hilbert_polynomial_from_shape(const ResolutionShape& shape, unsigned n);

// degree of the codimension-3 degeneracy class (1/4)(c1 c2 - 2 c3) of
// (Omega^p_{P^n}(p))^(+d copies), dual bundle
long long chern_degree_omega(unsigned n, unsigned p, unsigned copies);

struct PfaffianInput {
    long n = 0;
    long ell = 0;
    long characteristic = 0; // 0 = characteristic zero
    std::optional<long> middle_dim;
    std::optional<QuadraticSpace> middle_form;
};
struct PfaffianDecision {
    bool pfaffian;
    std::string clause; // which criterion clause fired
    std::string reason;
};
PfaffianDecision pfaffian_decision(const PfaffianInput& in);

} // namespace lagrangia
