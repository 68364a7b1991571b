#include "isogrow/classify.hpp"

#include <stdexcept>

namespace isogrow {

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::InfiniteMultiplicityThm12: return "InfiniteMultiplicityThm12";
        case Verdict::InfiniteMultiplicityThm13: return "InfiniteMultiplicityThm13";
        case Verdict::Unknown: return "Unknown";
        case Verdict::NoObstructionClaimed: return "NoObstructionClaimed";
        case Verdict::InvalidInput: return "InvalidInput";
    }
    return "?";
}

bool condition_11(int n, int k, int l) {
    if (k <= 0 || k >= n) {
        throw std::domain_error("condition_11: need 0 < k < n");
    }
    // l/k > 1/(n-k) with positive denominators.
    return static_cast<long long>(l) * (n - k) > static_cast<long long>(k);
}

bool exponent_condition(int n, int k, int l) {
    if (k <= 0 || k > n - 2) {
        throw std::domain_error("exponent_condition: need 0 < k <= n-2");
    }
    if (l < 0 || l > k || l >= n - 1) {
        throw std::domain_error("exponent_condition: need 0 <= l <= k and l < n-1");
    }
    // n - k - n(n-k-1)/(n-l-1) < 0 with n-l-1 > 0.
    return static_cast<long long>(n - k) * (n - l - 1) < static_cast<long long>(n) * (n - k - 1);
}

ObstructionReport classify(int n, int k, int l) {
    ObstructionReport report;
    report.n = n;
    report.k = k;
    report.l = l;

    const bool bounds_ok = n >= 0 && 0 <= l && l <= k && k <= n;
    const bool forced_translations = k >= n - 1 && l < k;
    if (!bounds_ok || forced_translations) {
        report.verdict = Verdict::InvalidInput;
        return report;
    }

    if (k > 0 && k < n) {
        report.dimension_ratio = InequalityEvidence{
            static_cast<long long>(l) * (n - k), static_cast<long long>(k), condition_11(n, k, l)};
        if (k <= n - 2 && l < n - 1) {
            report.exponent = InequalityEvidence{static_cast<long long>(n - k) * (n - l - 1),
                                                 static_cast<long long>(n) * (n - k - 1),
                                                 exponent_condition(n, k, l)};
        }
    }

    if (k == 0 || k == n - 1 || k == n) {
        report.verdict = Verdict::NoObstructionClaimed;
    } else if (k < n - 2) {
        report.verdict = Verdict::InfiniteMultiplicityThm13;
    } else if (k == n - 2 && condition_11(n, k, l)) {
        report.verdict = Verdict::InfiniteMultiplicityThm12;
    } else {
        report.verdict = Verdict::Unknown;
        report.conjecture_gap = true;
    }
    return report;
}

}  // namespace isogrow
