#include "isogrow/growth.hpp"

#include "isogrow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

namespace isogrow {

namespace {

std::optional<std::size_t> lookup(const std::vector<double>& radii,
                                  const std::vector<std::size_t>& counts, double r, double tol) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (std::abs(radii[i] - r) <= tol) {
            return counts[i];
        }
    }
    return std::nullopt;
}

// Number of distinct orthogonal parts among the first `upto` elements of
// `order`, evaluated at each radius via a single sweep.
std::vector<std::size_t> lambda_counts(const std::vector<const Isometry*>& elems,
                                       const std::vector<double>& norms,
                                       const std::vector<double>& radii, double tol) {
    std::vector<std::size_t> order(elems.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return norms[a] < norms[b]; });

    std::unordered_map<QuantKey, std::vector<const Isometry*>, QuantKeyHash> seen;
    std::size_t distinct = 0;
    std::vector<std::size_t> counts;
    counts.reserve(radii.size());
    std::size_t pos = 0;
    for (double r : radii) {
        while (pos < order.size() && norms[order[pos]] <= r + tol) {
            const Isometry* g = elems[order[pos]];
            auto& bucket = seen[quantize(g->ort)];
            bool dup = false;
            for (const Isometry* other : bucket) {
                if ((other->ort - g->ort).norm() <= tol) {
                    dup = true;
                    break;
                }
            }
            if (!dup) {
                bucket.push_back(g);
                ++distinct;
            }
            ++pos;
        }
        counts.push_back(distinct);
    }
    return counts;
}

}  // namespace

std::optional<std::size_t> GrowthProfile::lookup_N(double r, double tol) const {
    return lookup(radii, counts_N, r, tol);
}

std::optional<std::size_t> GrowthProfile::lookup_NV(double r, double tol) const {
    return lookup(radii, counts_NV, r, tol);
}

std::optional<std::size_t> GrowthProfile::lookup_Lambda(double r, double tol) const {
    return lookup(radii, counts_Lambda, r, tol);
}

GrowthProfile growth_profile(const GroupBall& ball, const std::vector<double>& radii,
                             const std::optional<AffineSubspace>& V) {
    GrowthProfile profile;
    profile.radii = radii;
    profile.ball_complete = ball.complete();
    if (radii.empty()) {
        return profile;
    }
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        if (radii[i + 1] < radii[i]) {
            throw std::invalid_argument("growth_profile: radii must be increasing");
        }
    }
    if (radii.back() > ball.radius() + kDefaultTol) {
        throw std::invalid_argument("growth_profile: radius exceeds ball radius");
    }

    const auto& elems = ball.explored();
    const std::size_t count = elems.size();

    std::vector<double> norms2(count);
    {
        // SoA pack of the translation parts for the batched norm kernel.
        const std::size_t dim = static_cast<std::size_t>(ball.spec().dim);
        std::vector<double> soa(count * dim);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t d = 0; d < dim; ++d) {
                soa[d * count + i] = elems[i].tran(static_cast<int>(d));
            }
        }
        kernels::squared_norms(soa.data(), count, dim, norms2.data());
    }

    std::vector<const Isometry*> ptrs(count);
    std::vector<double> norms(count);
    for (std::size_t i = 0; i < count; ++i) {
        ptrs[i] = &elems[i];
        norms[i] = std::sqrt(norms2[i]);
    }

    for (double r : radii) {
        const double bound = (r + kDefaultTol) * (r + kDefaultTol);
        profile.counts_N.push_back(kernels::count_leq(norms2.data(), count, bound));
    }
    profile.counts_Lambda = lambda_counts(ptrs, norms, radii, kDefaultTol);

    if (V) {
        std::vector<double> vnorms(count);
        for (std::size_t i = 0; i < count; ++i) {
            vnorms[i] = tran_V(elems[i], *V).norm();
        }
        for (double r : radii) {
            profile.counts_NV.push_back(kernels::count_leq(vnorms.data(), count, r + kDefaultTol));
        }
        profile.counts_LambdaV = lambda_counts(ptrs, vnorms, radii, kDefaultTol);
    }
    return profile;
}

DimensionEstimate estimate_dimension(const GrowthProfile& profile, CountKind use,
                                     double warn_threshold) {
    const std::vector<std::size_t>& counts =
        use == CountKind::N ? profile.counts_N : profile.counts_NV;
    if (profile.radii.size() < 4) {
        throw std::invalid_argument("estimate_dimension: need at least 4 radii");
    }
    if (profile.radii.back() < 4.0 * profile.radii.front()) {
        throw std::invalid_argument("estimate_dimension: radii must span at least a factor of 4");
    }
    if (counts.size() != profile.radii.size()) {
        throw std::invalid_argument("estimate_dimension: requested counts are missing");
    }
    for (std::size_t c : counts) {
        if (c == 0) {
            throw std::runtime_error(
                "estimate_dimension: counts contain zero; enlarge the radii");
        }
    }

    const std::size_t n = profile.radii.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(profile.radii[i]);
        ys[i] = std::log(static_cast<double>(counts[i]));
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    DimensionEstimate est;
    est.slope = sxy / sxx;
    const double intercept = my - est.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - (intercept + est.slope * xs[i]);
        ss += resid * resid;
    }
    est.residual = std::sqrt(ss / static_cast<double>(n));
    est.k_hat = static_cast<int>(std::max(0L, std::lround(est.slope)));
    est.residual_warning = est.residual > warn_threshold;
    return est;
}

LemmaReport check_growth_lemmas(const GrowthProfile& ambient, const GrowthProfile& sub, int m,
                                double C, double dV, const GrowthProfile* translations) {
    LemmaReport report;

    // N_G(r) <= N_Gamma(r) <= m N_G(r + C)
    for (std::size_t i = 0; i < ambient.radii.size(); ++i) {
        const double r = ambient.radii[i];
        const auto ng = sub.lookup_N(r);
        const auto ngc = sub.lookup_N(r + C);
        if (!ng || !ngc) {
            continue;
        }
        ++report.index_sandwich.radii_checked;
        const std::size_t ngamma = ambient.counts_N[i];
        if (!(*ng <= ngamma && ngamma <= static_cast<std::size_t>(m) * *ngc)) {
            report.index_sandwich.holds = false;
            if (!report.index_sandwich.first_violation_r) {
                report.index_sandwich.first_violation_r = r;
            }
        }
    }
    if (report.index_sandwich.radii_checked == 0) {
        throw std::invalid_argument(
            "check_growth_lemmas: no radius has the r+C lookup available");
    }

    // N_G^V(r - 2 dV) <= N_G(r) <= N_G^V(r)
    if (sub.has_V()) {
        for (std::size_t i = 0; i < sub.radii.size(); ++i) {
            const double r = sub.radii[i];
            const auto upper = sub.lookup_NV(r);
            const double rlow = r - 2.0 * dV;
            std::optional<std::size_t> lower;
            if (rlow < 0.0) {
                lower = 0;
            } else {
                lower = sub.lookup_NV(rlow);
            }
            if (!upper || !lower) {
                continue;
            }
            ++report.projection_sandwich.radii_checked;
            const std::size_t ng = sub.counts_N[i];
            if (!(*lower <= ng && ng <= *upper)) {
                report.projection_sandwich.holds = false;
                if (!report.projection_sandwich.first_violation_r) {
                    report.projection_sandwich.first_violation_r = r;
                }
            }
        }
        if (report.projection_sandwich.radii_checked == 0) {
            throw std::invalid_argument(
                "check_growth_lemmas: no radius has the r-2d(0,V) lookup available");
        }
    }

    // N_G(r)/N_T(2r) <= Lambda_G(r) <= N_Gamma(2r)/N_T(r), compared with
    // integer cross multiplication.
    for (std::size_t i = 0; i < sub.radii.size(); ++i) {
        const double r = sub.radii[i];
        const auto ngamma2r = ambient.lookup_N(2.0 * r);
        if (!ngamma2r) {
            continue;
        }
        std::size_t nt_r = 1;
        std::size_t nt_2r = 1;
        if (translations != nullptr) {
            const auto a = translations->lookup_N(r);
            const auto b = translations->lookup_N(2.0 * r);
            if (!a || !b) {
                continue;
            }
            nt_r = *a;
            nt_2r = *b;
        }
        ++report.lambda_bounds.radii_checked;
        const std::size_t lambda = sub.counts_Lambda[i];
        const std::size_t ng = sub.counts_N[i];
        if (!(lambda * nt_2r >= ng && lambda * nt_r <= *ngamma2r)) {
            report.lambda_bounds.holds = false;
            if (!report.lambda_bounds.first_violation_r) {
                report.lambda_bounds.first_violation_r = r;
            }
        }
    }
    if (report.lambda_bounds.radii_checked == 0) {
        throw std::invalid_argument("check_growth_lemmas: no radius has the 2r lookup available");
    }

    return report;
}

void write_growth_csv(std::ostream& os, const GrowthProfile& profile) {
    os << "r,N,Lambda,NV,LambdaV\n";
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        os << profile.radii[i] << ',' << profile.counts_N[i] << ',' << profile.counts_Lambda[i]
           << ',';
        if (profile.has_V()) {
            os << profile.counts_NV[i] << ',' << profile.counts_LambdaV[i];
        } else {
            os << ',';
        }
        os << '\n';
    }
}

}  // namespace isogrow
