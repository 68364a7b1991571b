#pragma once

#include "isogrow/group_ball.hpp"

#include <iosfwd>
#include <optional>

namespace isogrow {

// Sampled growth functions. counts_N[i] is the number of elements with
// |tran| <= radii[i]; counts_Lambda[i] the number of distinct orthogonal
// parts among them. When a subspace V is supplied, counts_NV and
// counts_LambdaV use |tran_V| instead.
struct GrowthProfile {
    std::vector<double> radii;
    std::vector<std::size_t> counts_N;
    std::vector<std::size_t> counts_Lambda;
    std::vector<std::size_t> counts_NV;
    std::vector<std::size_t> counts_LambdaV;
    bool ball_complete = true;

    bool has_V() const { return !counts_NV.empty(); }
    std::optional<std::size_t> lookup_N(double r, double tol = kDefaultTol) const;
    std::optional<std::size_t> lookup_NV(double r, double tol = kDefaultTol) const;
    std::optional<std::size_t> lookup_Lambda(double r, double tol = kDefaultTol) const;
};

GrowthProfile growth_profile(const GroupBall& ball, const std::vector<double>& radii,
                             const std::optional<AffineSubspace>& V = std::nullopt);

struct DimensionEstimate {
    int k_hat = 0;
    double slope = 0.0;
    double residual = 0.0;     // RMS of the log-log fit
    bool residual_warning = false;
};

enum class CountKind { N, NV };

// Least-squares slope of log(count) against log(r). Needs at least four
// radii spanning a factor of four; zero counts are an error (enlarge the
// radii).
DimensionEstimate estimate_dimension(const GrowthProfile& profile, CountKind use = CountKind::N,
                                     double warn_threshold = 0.2);

struct LemmaCheck {
    bool holds = true;
    std::optional<double> first_violation_r;
    std::size_t radii_checked = 0;
};

struct LemmaReport {
    LemmaCheck index_sandwich;        // N_G(r) <= N_Gamma(r) <= m N_G(r+C)
    LemmaCheck projection_sandwich;   // N_G^V(r - 2 dV) <= N_G(r) <= N_G^V(r)
    LemmaCheck lambda_bounds;         // N_G(r)/N_T(2r) <= Lambda_G(r) <= N_Gamma(2r)/N_T(r)

    bool all_hold() const {
        return index_sandwich.holds && projection_sandwich.holds && lambda_bounds.holds;
    }
};

// `ambient` is the profile of the full group, `sub` of the finite index
// subgroup with index m and coset constant C; dV = d(0, V). `translations`
// is the profile of the translation subgroup; nullptr means the trivial
// translation subgroup (count 1 at every radius). Profiles must carry the
// radii needed for the r+C and 2r lookups.
LemmaReport check_growth_lemmas(const GrowthProfile& ambient, const GrowthProfile& sub, int m,
                                double C, double dV,
                                const GrowthProfile* translations = nullptr);

// Header "r,N,Lambda,NV,LambdaV"; NV columns are left empty when absent.
void write_growth_csv(std::ostream& os, const GrowthProfile& profile);

}  // namespace isogrow
