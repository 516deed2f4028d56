#pragma once

#include <cstdint>
#include <vector>

#include "lagrangia/matrix.hpp"

namespace lagrangia {

// Strictly increasing index tuple in [0, dimV); the basis of Lambda^k V is
// enumerated in lexicographic tuple order, which is the serialization
// contract for every coefficient vector.
using MultiIndex = std::vector<uint8_t>;

uint64_t binom(uint64_t n, uint64_t k);
size_t mi_rank(unsigned dim_v, const MultiIndex& mi);
MultiIndex mi_unrank(unsigned dim_v, unsigned k, size_t rank);
// sign of the shuffle merging two disjoint sorted tuples, +1/-1
int shuffle_sign(const MultiIndex& a, const MultiIndex& b);
MultiIndex mi_complement(unsigned dim_v, const MultiIndex& mi);

/// Element of Lambda^k V, dim V <= 8.
class ExteriorVector {
  public:
    ExteriorVector(Field f, unsigned dim_v, unsigned degree);
    static ExteriorVector basis(Field f, unsigned dim_v, const MultiIndex& mi);

    const Field& field() const { return f_; }
    unsigned dim_v() const { return dim_v_; }
    unsigned degree() const { return degree_; }
    size_t size() const { return c_.size(); }
    uint64_t operator[](size_t i) const { return c_[i]; }
    uint64_t& operator[](size_t i) { return c_[i]; }
    FE coeff(const MultiIndex& mi) const { return FE(f_, c_[mi_rank(dim_v_, mi)]); }

    ExteriorVector operator+(const ExteriorVector& o) const;
    ExteriorVector operator-(const ExteriorVector& o) const;
    ExteriorVector scaled(uint64_t c) const;
    bool operator==(const ExteriorVector& o) const;
    bool is_zero() const;

    // identification Lambda^{dimV} V = k sending e_{0,...,dimV-1} to 1
    FE top_coefficient() const;

  private:
    Field f_;
    unsigned dim_v_, degree_;
    std::vector<uint64_t> c_;
};

// Wedge product; signs from shuffle inversions, skipped in characteristic 2
// (the signed generic path stays available as the test oracle).
ExteriorVector wedge(const ExteriorVector& u, const ExteriorVector& v);
ExteriorVector wedge_generic(const ExteriorVector& u, const ExteriorVector& v);

// Divided square on Lambda^m V with dim V = 2m: the sum over complementary
// index pairs of the coefficient products, with shuffle signs when m is even
// (any characteristic); odd m requires characteristic 2.
FE divided_square(const ExteriorVector& u);
FE assoc_bilinear(const ExteriorVector& u, const ExteriorVector& v);

// Matrix of a -> xi ^ a from Lambda^k V to Lambda^{k+1} V in MultiIndex order.
Matrix mult_matrix(const ExteriorVector& xi, unsigned k);

// Matrix of Lambda^m g on Lambda^m V (m x m minors of g).
Matrix induced_matrix(const Matrix& g, unsigned m);

// Lemma-9.2-style uniqueness system for the divided square (characteristic 2,
// m in {3,4}): the kernel of {Q(x ^ w) = 0} on quadratic forms of Lambda^m V,
// x over basis vectors and pairwise sums, w over (m-1)-monomials and pairwise
// sums.  generator is a GF(2) coefficient vector indexed by quad_pair_index.
struct UniquenessResult {
    size_t kernel_dim;
    std::vector<uint8_t> generator;
};
UniquenessResult divided_square_uniqueness(unsigned m);
size_t quad_pair_index(size_t n_basis, size_t a, size_t b); // a <= b

} // namespace lagrangia
