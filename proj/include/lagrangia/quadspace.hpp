#pragma once

#include <optional>
#include <span>

#include "lagrangia/exterior.hpp"

namespace lagrangia {

/// Quadratic space of even dimension.  Over a finite field the form is the
/// primary datum, stored as an upper-triangular q-table (the Gram matrix is
/// derived: b_ij = q_ij for i < j, b_ii = 2 q_ii, which loses information in
/// characteristic 2).  Integer-signature mode carries a symmetric integer
/// Gram matrix with characteristic-0 semantics for the real case.
class QuadraticSpace {
  public:
    static QuadraticSpace hyperbolic(Field f, size_t n); // q = sum x_i x_{n+i}
    static QuadraticSpace from_qtable(Field f, size_t dim, std::vector<uint64_t> qtab);
    // divided square on Lambda^m V, dim V = 2m
    static QuadraticSpace divided_square_space(Field f, unsigned m);
    static QuadraticSpace integer_signature(std::vector<int64_t> gram, size_t dim);

    bool signature_mode() const { return signature_mode_; }
    const Field& field() const { return f_; }
    size_t dim() const { return dim_; }
    size_t n() const { return dim_ / 2; }

    uint64_t qcoef(size_t i, size_t j) const; // i <= j
    uint64_t eval_q(std::span<const uint64_t> v) const;
    uint64_t eval_b(std::span<const uint64_t> x, std::span<const uint64_t> y) const;
    const Matrix& gram() const { return gram_; }
    int64_t gram_int(size_t i, size_t j) const { return gram_int_[i * dim_ + j]; }

    bool same(const QuadraticSpace& o) const;

  private:
    QuadraticSpace() = default;
    Field f_;
    size_t dim_ = 0;
    std::vector<uint64_t> qtab_; // row-major upper triangle, q_{ij} for i <= j
    Matrix gram_;
    std::vector<int64_t> gram_int_;
    bool signature_mode_ = false;
};

/// Lagrangian subspace, kept as a 2n x n basis matrix in reduced column
/// echelon form.
class Lagrangian {
  public:
    Lagrangian(QuadraticSpace space, Matrix basis); // verifies
    const QuadraticSpace& space() const { return space_; }
    const Matrix& basis() const { return basis_; }

  private:
    QuadraticSpace space_;
    Matrix basis_;
};

// dim = n and q vanishes on every basis column and every pairwise sum
bool is_lagrangian(const Matrix& subspace_basis, const QuadraticSpace& q);

size_t intersection_dim(const Lagrangian& a, const Lagrangian& b);

// dim(L cap ref) mod 2; for even n, 0 means "same family as ref"
int family_parity(const Lagrangian& l, const Lagrangian& ref);

enum class Family { Same, Opposite };

// The affine chart of Lagrangians transverse to comp: the graph of an
// alternating map ref -> comp given by the matrix M in the hyperbolic basis
// pair (ref basis, dual comp basis).  M = 0 returns ref itself.
Lagrangian graph_lagrangian(const Lagrangian& ref, const Lagrangian& comp, const Matrix& m);

// Chart sampling: the graph of a seeded alternating map ref -> comp; for the
// opposite family one hyperbolic basis pair of (ref, comp) is swapped first.
// Coefficients come from the SplitMix64 stream reduced mod p, strictly upper
// triangle row-major, each entry's k coefficients in increasing degree.
Lagrangian random_lagrangian(const Lagrangian& ref, const Lagrangian& comp, Family family,
                             uint64_t seed);

struct WittClass {
    size_t rank = 0;
    size_t witt_index = 0;
    bool hyperbolic = false;
    std::optional<uint64_t> arf;                    // char 2 (0/1 after trace)
    std::optional<std::pair<int, int>> signature;   // integer-signature mode
};

WittClass witt_classify(const QuadraticSpace& q);

// The tensor construction on E (x) Lambda^4 V, dim V = 8:
// Q(sum e_i (x) u_i) = sum b_ii u_i^(2) + sum_{i<j} b_ij u_i ^ u_j.
QuadraticSpace tensor_form(const Matrix& gram_e);

} // namespace lagrangia
