#pragma once

#include <optional>
#include <string>

namespace isogrow {

enum class Verdict {
    InfiniteMultiplicityThm12,
    InfiniteMultiplicityThm13,
    Unknown,
    NoObstructionClaimed,
    InvalidInput,
};

const char* to_string(Verdict verdict);

// Cross-multiplied integer sides of a strict rational inequality, plus
// whether it holds.
struct InequalityEvidence {
    long long lhs = 0;
    long long rhs = 0;
    bool holds = false;
};

// l/k > 1/(n-k), evaluated exactly on integers. Requires 0 < k < n.
bool condition_11(int n, int k, int l);

// n - k - n(n-k-1)/(n-l-1) < 0, evaluated exactly on integers. Requires
// 0 < k <= n-2, 0 <= l <= k, l < n-1.
bool exponent_condition(int n, int k, int l);

struct ObstructionReport {
    int n = 0;
    int k = 0;
    int l = 0;
    Verdict verdict = Verdict::InvalidInput;
    std::optional<InequalityEvidence> dimension_ratio;   // l(n-k) > k
    std::optional<InequalityEvidence> exponent;          // (n-k)(n-l-1) < n(n-k-1)
    // The k = n-2 gap is conjectured to carry the same obstruction.
    bool conjecture_gap = false;
};

// Case split over (n, dim Gamma, dim Gamma_T):
//   invalid when the triple violates 0 <= l <= k <= n or k >= n-1 with
//     l < k (groups of dimension >= n-1 have full translation subgroups);
//   k in {0, n-1, n}: no obstruction claimed;
//   0 < k < n-2: infinite multiplicity;
//   k = n-2 with l/k > 1/(n-k): infinite multiplicity;
//   otherwise unknown.
ObstructionReport classify(int n, int k, int l);

}  // namespace isogrow
