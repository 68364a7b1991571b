#pragma once

#include "isogrow/growth.hpp"

namespace isogrow {

enum class InvarianceStatus { Subset, Equal, Fails, Inconclusive };

struct ConjugationVerdict {
    InvarianceStatus status = InvarianceStatus::Inconclusive;
    // The first generator whose conjugate was not found, present iff Fails.
    std::optional<Isometry> witness;
    double checked_radius = 0.0;
};

const char* to_string(InvarianceStatus status);

// Checks A Gamma A^{-1} subset of Gamma on generators; since conjugation is
// a homomorphism this is sufficient. Equal additionally requires the
// A^{-1}-conjugate of every generator to be found. Requires
// scale * max generator translation norm <= r. Missing conjugates on an
// incomplete ball give Inconclusive, never Fails.
ConjugationVerdict check_conjugation_invariance(const ConformalMap& A, const GroupSpec& spec,
                                                double r,
                                                std::size_t max_elements = 500000);

// [Gamma : A Gamma A^{-1}] computed on balls. Requires the invariance check
// to return Subset or Equal.
CosetIndex conjugation_index(const ConformalMap& A, const GroupSpec& spec, double r);

struct LinearizedPair {
    TranslationPair pair;
    int affine_order = 0;          // number of iterates used in the affine solve
    bool generators_heuristic = true;  // generating set is minimal-word-length elements
};

// Replaces a translation pair (G, V) by a pair (G', V') with V' linear and
// A V' = V': iterate v_m = A^m v_0 on the orthogonal complement line, solve
// for an affine combination equal to 0, and intersect G with its
// A-conjugates. Returns nullopt when no affine combination with residual
// below 1e-8 exists within m_max iterates (m_max < 0 selects 2n). Requires
// A expanding.
std::optional<LinearizedPair> linearize_pair(const ConformalMap& A, const TranslationPair& pair,
                                             const GroupSpec& spec, int m_max = -1);

enum class TheoremStatus { Verified, Refuted, NotApplicable, Inconclusive };

const char* to_string(TheoremStatus status);

struct TheoremReport {
    TheoremStatus status = TheoremStatus::Inconclusive;
    ConjugationVerdict invariance;
    int translation_rank = 0;
    std::optional<DimensionEstimate> dimension;
};

// Compares the translation-subgroup lattice rank against the growth
// dimension estimate for an expanding A with A Gamma A^{-1} subset Gamma.
// NotApplicable when the invariance hypothesis fails; Refuted (flagged as
// an implementation bug) when a complete ball shows a rank/dimension
// mismatch.
TheoremReport verify_translation_dim_theorem(const GroupSpec& spec, const ConformalMap& A,
                                             const std::vector<double>& radii);

}  // namespace isogrow
