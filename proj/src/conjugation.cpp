#include "isogrow/conjugation.hpp"

#include <algorithm>
#include <cmath>

namespace isogrow {

const char* to_string(InvarianceStatus status) {
    switch (status) {
        case InvarianceStatus::Subset: return "Subset";
        case InvarianceStatus::Equal: return "Equal";
        case InvarianceStatus::Fails: return "Fails";
        case InvarianceStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(TheoremStatus status) {
    switch (status) {
        case TheoremStatus::Verified: return "Verified";
        case TheoremStatus::Refuted: return "Refuted";
        case TheoremStatus::NotApplicable: return "NotApplicable";
        case TheoremStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

ConjugationVerdict check_conjugation_invariance(const ConformalMap& A, const GroupSpec& spec,
                                                double r, std::size_t max_elements) {
    if (A.dim() != spec.dim) {
        throw std::invalid_argument("check_conjugation_invariance: dimension mismatch");
    }
    const double maxgen = spec.max_generator_tran();
    if (A.scale * maxgen > r + kDefaultTol) {
        throw std::invalid_argument(
            "check_conjugation_invariance: r too small to contain conjugated generators");
    }

    const GroupBall ball = enumerate_ball(spec, r, -1.0, 256, max_elements);

    ConjugationVerdict verdict;
    verdict.checked_radius = r;

    bool inconclusive = false;
    for (const Isometry& g : spec.generators) {
        const Isometry h = conjugate_by_conformal(A, g);
        if (ball.contains(h)) {
            continue;
        }
        if (!ball.complete()) {
            inconclusive = true;
            continue;
        }
        verdict.status = InvarianceStatus::Fails;
        verdict.witness = g;
        return verdict;
    }
    if (inconclusive) {
        verdict.status = InvarianceStatus::Inconclusive;
        return verdict;
    }

    // Subset holds; Equal needs positive evidence in the other direction.
    verdict.status = InvarianceStatus::Subset;
    const ConformalMap Ainv = A.inverse();
    bool equal = true;
    for (const Isometry& g : spec.generators) {
        const Isometry h = conjugate_by_conformal(Ainv, g);
        if (h.tran.norm() > r + kDefaultTol || !ball.contains(h)) {
            equal = false;
            break;
        }
    }
    if (equal) {
        verdict.status = InvarianceStatus::Equal;
    }
    return verdict;
}

CosetIndex conjugation_index(const ConformalMap& A, const GroupSpec& spec, double r) {
    const ConjugationVerdict verdict = check_conjugation_invariance(A, spec, r);
    if (verdict.status == InvarianceStatus::Fails ||
        verdict.status == InvarianceStatus::Inconclusive) {
        throw std::invalid_argument(
            "conjugation_index: A Gamma A^{-1} subset Gamma does not hold on the checked ball");
    }
    const GroupBall ambient = enumerate_ball(spec, r);
    if (verdict.status == InvarianceStatus::Equal) {
        return CosetIndex{1, ambient.complete()};
    }

    std::vector<Isometry> conj_gens;
    conj_gens.reserve(spec.generators.size());
    for (const Isometry& g : spec.generators) {
        conj_gens.push_back(conjugate_by_conformal(A, g));
    }
    const GroupSpec sub_spec(spec.dim, std::move(conj_gens));
    // Headroom so rep^{-1} g membership tests stay decidable.
    const double sub_r = r + 2.0 * A.scale * spec.max_generator_tran();
    const GroupBall sub = enumerate_ball(sub_spec, sub_r);
    return coset_index(ambient, sub);
}

std::optional<LinearizedPair> linearize_pair(const ConformalMap& A, const TranslationPair& pair,
                                             const GroupSpec& spec, int m_max) {
    if (!A.expanding()) {
        throw std::invalid_argument("linearize_pair: construction requires an expanding map");
    }
    const int n = spec.dim;
    if (m_max < 0) {
        m_max = 2 * n;
    }
    {
        const double r_check =
            std::max(1.0, A.scale * spec.max_generator_tran() * 1.5);
        const ConjugationVerdict verdict = check_conjugation_invariance(A, spec, r_check);
        if (verdict.status != InvarianceStatus::Subset &&
            verdict.status != InvarianceStatus::Equal) {
            throw std::invalid_argument(
                "linearize_pair: conjugation invariance precondition does not hold");
        }
    }

    const AffineSubspace& V = pair.V;
    // v_0 is the intersection of V with the orthogonal complement of its
    // direction space, i.e. the point of V closest to the origin.
    const Vector v0 = V.base - V.basis * (V.basis.transpose() * V.base);

    std::vector<Vector> iterates{v0};
    int order = -1;
    Eigen::VectorXd coeffs;
    for (int m = 0; m <= m_max; ++m) {
        if (m > 0) {
            iterates.push_back(A.apply(iterates.back()));
        }
        // Solve sum a_i v_i = 0 with sum a_i = 1, least squares.
        Matrix system(n + 1, m + 1);
        for (int i = 0; i <= m; ++i) {
            system.col(i).head(n) = iterates[static_cast<std::size_t>(i)];
            system(n, i) = 1.0;
        }
        Vector rhs = Vector::Zero(n + 1);
        rhs(n) = 1.0;
        Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-12);
        const Vector a = svd.solve(rhs);
        if ((system * a - rhs).norm() < 1e-8) {
            order = m;
            coeffs = a;
            break;
        }
    }
    if (order < 0) {
        return std::nullopt;
    }

    // The affine combination of the parallel iterate spaces passes through
    // the origin and shares the direction space of V.
    AffineSubspace v_linear(Vector::Zero(n), pair.V.basis);

    // Intersection of G with its A-conjugates, realized by filtering ball
    // elements whose A^{-i}-conjugates all stay in the ball.
    const GroupSpec sub_spec(n, pair.subgroup_generators);
    const double r_ball = 4.0 * std::max(1.0, sub_spec.max_generator_tran());
    const GroupBall ball = enumerate_ball(sub_spec, r_ball);

    std::vector<ConformalMap> inv_powers;
    {
        ConformalMap ainv = A.inverse();
        ConformalMap acc = ainv;
        for (int i = 1; i <= order; ++i) {
            inv_powers.push_back(acc);
            acc = ConformalMap(acc.scale * ainv.scale, acc.rot * ainv.rot);
        }
    }

    std::vector<std::size_t> filtered;
    for (std::size_t i = 0; i < ball.explored().size(); ++i) {
        const Isometry& g = ball.explored()[i];
        bool in_all = true;
        for (const ConformalMap& p : inv_powers) {
            if (!ball.contains(conjugate_by_conformal(p, g))) {
                in_all = false;
                break;
            }
        }
        if (in_all) {
            filtered.push_back(i);
        }
    }

    int min_len = 0;
    for (std::size_t idx : filtered) {
        if (ball.word_length(idx) > 0) {
            const int len = ball.word_length(idx);
            if (min_len == 0 || len < min_len) {
                min_len = len;
            }
        }
    }
    std::vector<Isometry> gens;
    for (std::size_t idx : filtered) {
        if (ball.word_length(idx) == min_len && min_len > 0) {
            gens.push_back(ball.explored()[idx]);
        }
    }
    if (gens.empty()) {
        gens = pair.subgroup_generators;
    }

    LinearizedPair result{TranslationPair{std::move(gens), std::move(v_linear)}, order, true};
    return result;
}

TheoremReport verify_translation_dim_theorem(const GroupSpec& spec, const ConformalMap& A,
                                             const std::vector<double>& radii) {
    if (!A.expanding()) {
        throw std::invalid_argument("verify_translation_dim_theorem: A must be expanding");
    }
    if (radii.empty()) {
        throw std::invalid_argument("verify_translation_dim_theorem: radii must be non-empty");
    }
    const double r_max = *std::max_element(radii.begin(), radii.end());
    const double r_check =
        std::max(r_max, A.scale * spec.max_generator_tran() * 1.5 + 1.0);

    TheoremReport report;
    report.invariance = check_conjugation_invariance(A, spec, r_check);

    const GroupBall ball = enumerate_ball(spec, r_max);
    const std::vector<Vector> translations = translation_subgroup(ball);
    report.translation_rank = translations.empty() ? 0 : lattice_basis(translations).rank();
    const GrowthProfile profile = growth_profile(ball, radii);
    report.dimension = estimate_dimension(profile);

    if (report.invariance.status == InvarianceStatus::Fails) {
        report.status = TheoremStatus::NotApplicable;
        return report;
    }
    if (report.invariance.status == InvarianceStatus::Inconclusive) {
        report.status = TheoremStatus::Inconclusive;
        return report;
    }
    if (report.translation_rank == report.dimension->k_hat) {
        report.status = TheoremStatus::Verified;
    } else if (ball.complete()) {
        // Contradicts the hypothesis chain; only an implementation bug can
        // land here.
        report.status = TheoremStatus::Refuted;
    } else {
        report.status = TheoremStatus::Inconclusive;
    }
    return report;
}

}  // namespace isogrow
