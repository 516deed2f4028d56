#pragma once

#include "lagrangia/frobenius.hpp"
#include "lagrangia/loci.hpp"

namespace lagrangia {

inline constexpr const char* kVersion = "0.1.0";

struct JacobianSample {
    std::vector<std::string> point; // coefficient strings over the sample field
    size_t rank;
};

/// Full record of one pipeline run; serializes to the canonical report JSON.
struct LocusRun {
    std::string ambient;
    bool seeded = false;
    uint64_t seed = 0;
    std::string field_name; // gf2 | gf4
    std::vector<uint32_t> field_modulus;
    std::vector<std::vector<std::string>> w_basis; // columns of coefficient strings
    std::vector<std::string> census_keys;          // gf2, gf4, gf16 as enumerated
    std::vector<size_t> census_counts;
    std::vector<size_t> kernel_dims;
    std::vector<std::string> cubics;
    BettiTable betti;
    std::vector<long> hilbert_values;       // t = 0..6
    std::vector<long long> hilbert_coeffs;  // Hilbert polynomial, constant first
    bool hilbert_matches = false;           // equals 5t^2+1
    HasseResult hasse;
    EnriquesClass cls;
    bool quadric_free = false;
    std::vector<JacobianSample> jacobian_samples;
    bool smooth_samples = false; // every sampled rank equals 3
    PfaffianDecision pfaffian;

    std::string to_json() const; // deterministic byte-for-byte given equal data
};

// The ten-plane degeneration: monomial Lagrangian, monomial cubics,
// Hasse invariant one, non-Pfaffian.
LocusRun run_reisner();

// Seeded opposite-family Lagrangian over GF(2) or GF(4), full pipeline.
// Degenerate samples raise Error(DimensionMismatch) (retry with a new seed).
LocusRun run_construct(uint64_t seed, const std::string& field_name);

struct SurveyEntry {
    uint64_t seed;
    std::string outcome; // mu2 | alpha2 | degenerate
    std::string hasse;   // empty when the pipeline failed
    std::string note;
};
struct SurveyResult {
    std::string field_name;
    uint64_t seed0 = 0;
    size_t count = 0;
    size_t mu2 = 0, alpha2 = 0, degenerate = 0;
    std::vector<SurveyEntry> entries; // ordered by seed
    std::string to_json() const;
};

// Classifies `count` seeded samples concurrently; for count >= 200 over GF(2)
// both nondegenerate classes must appear.
SurveyResult run_survey(size_t count, const std::string& field_name, uint64_t seed0,
                        unsigned threads = 0);

struct VerifyItem {
    std::string name;
    bool pass;
    std::string detail;
};
struct VerifyResult {
    std::vector<VerifyItem> items;
    bool all_pass() const;
    std::string to_json() const;
};

// The golden-number suite over every quantitative claim; heavy additionally
// attempts the P^7 decic interpolation (hours).
VerifyResult run_verify(bool heavy = false);

} // namespace lagrangia
