#pragma once

#include "lagrangia/polyring.hpp"

namespace lagrangia {

struct GradedFreeModule {
    std::vector<int> degrees; // generator degrees with multiplicity; order is identity
    size_t rank() const { return degrees.size(); }
    bool operator==(const GradedFreeModule& o) const { return degrees == o.degrees; }
};

/// Homogeneous matrix between graded free modules; entry (i,j) is homogeneous
/// of degree source[j] - target[i] or zero.
class GradedMap {
  public:
    GradedMap() = default;
    GradedMap(Ring r, GradedFreeModule target, GradedFreeModule source,
              std::vector<Polynomial> entries); // row-major, verifies degrees

    const Ring& ring() const { return r_; }
    const GradedFreeModule& target() const { return target_; }
    const GradedFreeModule& source() const { return source_; }
    const Polynomial& at(size_t r, size_t c) const { return a_[r * source_.rank() + c]; }
    Polynomial& at(size_t r, size_t c) { return a_[r * source_.rank() + c]; }

    bool is_zero() const;
    bool operator==(const GradedMap& o) const {
        return target_ == o.target_ && source_ == o.source_ && a_ == o.a_;
    }

  private:
    Ring r_;
    GradedFreeModule target_, source_;
    std::vector<Polynomial> a_;
};

// a after b: target(a) <- source(b)
GradedMap compose(const GradedMap& a, const GradedMap& b);

struct Complex {
    Ring ring;
    std::vector<GradedFreeModule> modules; // F0, F1, ...
    std::vector<GradedMap> maps;           // maps[i]: F_{i+1} -> F_i
    Ideal augmentation;
    size_t length() const { return maps.size(); }
};

struct BettiEntry {
    int i;
    int d;
    long rank;
    bool operator==(const BettiEntry& o) const { return i == o.i && d == o.d && rank == o.rank; }
};
struct BettiTable {
    std::vector<BettiEntry> entries; // sorted by (i, d)
    bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

// Generators of ker(M) as a map onto M's source; minimal up to the
// subsequent complex-level minimization pass.
GradedMap syzygy_step(const GradedMap& m);

// Minimal free resolution of R/I; stops at the first zero kernel or at
// max_length (default: variable count, the global dimension bound).
Complex minimal_free_resolution(const Ideal& i, int max_length = -1);

// Iterated unit-entry pivoting with row-major scan order.
void minimize_complex(Complex& c);

// Reads ranks and degrees off a minimal complex; throws NonMinimalComplex on
// a unit entry.
BettiTable betti_table(const Complex& c);

// Chain maps phi_i with d_i phi_i = phi_{i-1} d'_i, solved column by column
// through Groebner division with cofactors (free choices set to zero).
std::vector<GradedMap> lift_chain_map(const Complex& target, const Complex& source,
                                      const GradedMap& phi0);

} // namespace lagrangia
