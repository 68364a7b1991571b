#include "isogrow/group_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace isogrow {

namespace {

// Distinct elements closer than this make the group look non-discrete.
constexpr double kNearCollision = 1e-4;

}  // namespace

GroupSpec::GroupSpec(int n, std::vector<Isometry> gens) : dim(n), generators(std::move(gens)) {
    if (generators.empty()) {
        throw std::invalid_argument("GroupSpec: generator list must be non-empty");
    }
    for (const Isometry& g : generators) {
        if (g.dim() != dim) {
            throw std::invalid_argument("GroupSpec: generator dimension mismatch");
        }
    }
}

double GroupSpec::max_generator_tran() const {
    double m = 0.0;
    for (const Isometry& g : generators) {
        m = std::max(m, g.tran.norm());
    }
    return m;
}

std::size_t GroupBall::insert(Isometry g, int word_len) {
    const std::size_t idx = elems_.size();
    norms_.push_back(g.tran.norm());
    word_len_.push_back(word_len);
    index_[quantize(g)].push_back(idx);
    elems_.push_back(std::move(g));
    return idx;
}

std::vector<std::size_t> GroupBall::indices_within(double r) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (norms_[i] <= r + tol_) {
            idx.push_back(i);
        }
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return norms_[a] < norms_[b]; });
    return idx;
}

std::size_t GroupBall::count_within(double r) const {
    std::size_t n = 0;
    for (double v : norms_) {
        n += v <= r + tol_ ? 1 : 0;
    }
    return n;
}

std::optional<std::size_t> GroupBall::find(const Isometry& g, double tol) const {
    const auto it = index_.find(quantize(g));
    if (it == index_.end()) {
        return std::nullopt;
    }
    for (std::size_t idx : it->second) {
        if (approx_equal(elems_[idx], g, tol)) {
            return idx;
        }
    }
    return std::nullopt;
}

bool GroupBall::contains(const Isometry& g, double tol) const { return find(g, tol).has_value(); }

GroupBall enumerate_ball(const GroupSpec& spec, double r, double margin, int max_words,
                         std::size_t max_elements) {
    if (r < 0.0) {
        throw std::invalid_argument("enumerate_ball: radius must be >= 0");
    }
    if (margin < 0.0) {
        margin = 2.0 * spec.max_generator_tran();
    }
    const double bound = r + margin;

    std::vector<Isometry> steps;
    steps.reserve(2 * spec.generators.size());
    for (const Isometry& g : spec.generators) {
        steps.push_back(g);
        steps.push_back(inverse(g));
    }

    GroupBall ball(spec);
    ball.radius_ = r;
    ball.margin_ = margin;
    const Isometry id = Isometry::identity(spec.dim);
    ball.insert(id, 0);

    std::vector<std::size_t> frontier{0};
    bool budget_hit = false;

    for (int depth = 1; depth <= max_words && !frontier.empty() && !budget_hit; ++depth) {
        std::vector<std::size_t> next;
        for (std::size_t idx : frontier) {
            for (const Isometry& s : steps) {
                Isometry h = compose(ball.elems_[idx], s);
                if (h.tran.norm() > bound + ball.tol_) {
                    continue;
                }
                const QuantKey key = quantize(h);
                auto it = ball.index_.find(key);
                bool duplicate = false;
                if (it != ball.index_.end()) {
                    for (std::size_t other : it->second) {
                        const double d = isometry_distance(ball.elems_[other], h);
                        if (d <= ball.tol_) {
                            duplicate = true;
                            break;
                        }
                        // Same quantization cell but not equal: the cell
                        // diameter is far below kNearCollision.
                        std::ostringstream msg;
                        msg << "enumerate_ball: elements " << d
                            << " apart; group looks non-discrete";
                        throw NonDiscreteGroup(msg.str());
                    }
                }
                if (duplicate) {
                    continue;
                }
                const double d_id = isometry_distance(h, id);
                if (d_id > ball.tol_ && d_id < kNearCollision) {
                    std::ostringstream msg;
                    msg << "enumerate_ball: non-identity element " << d_id
                        << " from identity; group looks non-discrete";
                    throw NonDiscreteGroup(msg.str());
                }
                if (ball.elems_.size() >= max_elements) {
                    budget_hit = true;
                    break;
                }
                next.push_back(ball.insert(std::move(h), depth));
            }
            if (budget_hit) {
                break;
            }
        }
        if (!next.empty()) {
            ball.max_word_length_ = depth;
        }
        frontier = std::move(next);
    }

    ball.complete_ = frontier.empty() && !budget_hit;
    return ball;
}

std::vector<Vector> translation_subgroup(const GroupBall& ball, double tol) {
    std::vector<Vector> out;
    for (const Isometry& g : ball.explored()) {
        if (g.is_translation(tol) && g.tran.norm() > tol) {
            out.push_back(g.tran);
        }
    }
    return out;
}

namespace {

// Maximal linearly independent subset, ascending by norm.
std::vector<Vector> independent_subset(std::vector<Vector> vecs, double tol) {
    std::sort(vecs.begin(), vecs.end(),
              [](const Vector& a, const Vector& b) { return a.norm() < b.norm(); });
    std::vector<Vector> basis;
    std::vector<Vector> ortho;  // Gram-Schmidt directions of `basis`
    for (const Vector& v : vecs) {
        Vector w = v;
        for (const Vector& q : ortho) {
            w -= q.dot(v) * q;
        }
        if (w.norm() > tol * (1.0 + v.norm())) {
            basis.push_back(v);
            ortho.push_back(w / w.norm());
        }
    }
    return basis;
}

}  // namespace

LatticeBasis lattice_basis(const std::vector<Vector>& translations, double tol) {
    std::vector<Vector> vs;
    for (const Vector& v : translations) {
        if (v.norm() > tol) {
            vs.push_back(v);
        }
    }
    if (vs.empty()) {
        return LatticeBasis{};
    }

    // Greedy pairwise size reduction iterated to fixpoint: subtract rounded
    // projections while that strictly shortens a vector. Adequate at the
    // small ranks this library targets.
    bool changed = true;
    int rounds = 0;
    while (changed && ++rounds < 1000) {
        changed = false;
        std::sort(vs.begin(), vs.end(),
                  [](const Vector& a, const Vector& b) { return a.norm() < b.norm(); });
        // Drop +/- duplicates.
        std::vector<Vector> dedup;
        for (const Vector& v : vs) {
            bool dup = false;
            for (const Vector& u : dedup) {
                if ((v - u).norm() <= tol || (v + u).norm() <= tol) {
                    dup = true;
                    break;
                }
            }
            if (!dup) {
                dedup.push_back(v);
            }
        }
        if (dedup.size() != vs.size()) {
            vs = std::move(dedup);
            changed = true;
        }
        for (std::size_t j = 0; j < vs.size(); ++j) {
            for (std::size_t i = 0; i < vs.size(); ++i) {
                if (i == j) {
                    continue;
                }
                const double denom = vs[i].squaredNorm();
                if (denom <= tol) {
                    continue;
                }
                const double k = std::round(vs[j].dot(vs[i]) / denom);
                if (k == 0.0) {
                    continue;
                }
                Vector w = vs[j] - k * vs[i];
                if (w.norm() <= tol) {
                    vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                    --j;
                    break;
                }
                if (w.norm() < vs[j].norm() * (1.0 - 1e-12)) {
                    vs[j] = std::move(w);
                    changed = true;
                }
            }
        }
    }

    LatticeBasis basis{independent_subset(vs, tol)};

    for (const Vector& v : translations) {
        if (v.norm() <= tol) {
            continue;
        }
        if (!lattice_coordinates(basis, v, tol)) {
            throw std::runtime_error(
                "lattice_basis: inputs are not an integer combination of the reduced basis; "
                "the vectors are inconsistent with a discrete subgroup");
        }
    }
    return basis;
}

std::optional<std::vector<long>> lattice_coordinates(const LatticeBasis& basis, const Vector& v,
                                                     double tol) {
    if (basis.vectors.empty()) {
        return v.norm() <= tol ? std::make_optional(std::vector<long>{}) : std::nullopt;
    }
    const int n = static_cast<int>(basis.vectors[0].size());
    const int k = basis.rank();
    Matrix b(n, k);
    for (int i = 0; i < k; ++i) {
        b.col(i) = basis.vectors[static_cast<std::size_t>(i)];
    }
    const Vector coeff = (b.transpose() * b).ldlt().solve(b.transpose() * v);
    std::vector<long> rounded(static_cast<std::size_t>(k));
    Vector rv = Vector::Zero(n);
    for (int i = 0; i < k; ++i) {
        rounded[static_cast<std::size_t>(i)] = std::lround(coeff(i));
        rv += static_cast<double>(rounded[static_cast<std::size_t>(i)]) * b.col(i);
    }
    if ((rv - v).norm() > tol * (1.0 + v.norm())) {
        return std::nullopt;
    }
    return rounded;
}

Vector tran_V(const Isometry& g, const AffineSubspace& V, double tol) {
    if (g.dim() != V.ambient_dim()) {
        throw std::invalid_argument("tran_V: dimension mismatch");
    }
    const Vector t0 = g.apply(V.base) - V.base;
    const double atol = tol * (1.0 + V.base.norm() + t0.norm());
    for (int i = 0; i < V.dim(); ++i) {
        const Vector probe = V.base + V.basis.col(i);
        if ((g.apply(probe) - probe - t0).norm() > atol) {
            throw NotTranslationOnV("tran_V: restriction to V is not a translation");
        }
    }
    // The translation must be parallel to V, otherwise gV != V.
    if ((t0 - V.basis * (V.basis.transpose() * t0)).norm() > atol) {
        throw NotTranslationOnV("tran_V: translation vector is not parallel to V");
    }
    return t0;
}

PairReport verify_translation_pair(const GroupSpec& spec, const TranslationPair& pair, double r) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("verify_translation_pair: r must be positive");
    }
    const GroupSpec sub_spec(spec.dim, pair.subgroup_generators);
    const GroupBall ball = enumerate_ball(sub_spec, r);
    const AffineSubspace& V = pair.V;

    PairReport report;
    report.translations_on_V = true;
    report.identity_on_parallel = true;
    report.preserves_distance = true;

    std::vector<Vector> tvs;
    for (std::size_t i = 0; i < ball.explored().size(); ++i) {
        const Isometry& g = ball.explored()[i];
        try {
            tvs.push_back(tran_V(g, V, kDefaultTol));
        } catch (const NotTranslationOnV&) {
            report.translations_on_V = false;
            if (!report.failing_element) {
                report.failing_element = i;
            }
            continue;
        }
        if ((g.ort * V.basis - V.basis).norm() >
            kDefaultTol * (1.0 + std::sqrt(static_cast<double>(V.dim())))) {
            report.identity_on_parallel = false;
            if (!report.failing_element) {
                report.failing_element = i;
            }
        }
    }

    std::mt19937 rng(20240801u);
    std::uniform_real_distribution<double> coord(-std::max(r, 1.0), std::max(r, 1.0));
    for (int p = 0; p < 20 && report.preserves_distance; ++p) {
        Vector x(spec.dim);
        for (int c = 0; c < spec.dim; ++c) {
            x(c) = coord(rng);
        }
        const double dx = V.distance(x);
        for (const Isometry& g : ball.explored()) {
            if (std::abs(V.distance(g.apply(x)) - dx) > kDefaultTol * (1.0 + x.norm())) {
                report.preserves_distance = false;
                break;
            }
        }
    }

    std::vector<Vector> nonzero;
    for (const Vector& t : tvs) {
        if (t.norm() > kDefaultTol) {
            nonzero.push_back(t);
        }
    }
    if (report.translations_on_V) {
        try {
            report.lattice_rank = lattice_basis(nonzero).rank();
        } catch (const std::runtime_error&) {
            report.lattice_rank = -1;
        }
    }
    report.cocompact_rank = report.translations_on_V && report.lattice_rank == V.dim();
    return report;
}

CosetIndex coset_index(const GroupBall& ambient, const GroupBall& sub, double tol) {
    // Precondition: the sub ball is contained in the ambient group.
    for (std::size_t i = 0; i < sub.explored().size(); ++i) {
        if (sub.tran_norms()[i] <= ambient.radius() + tol &&
            !ambient.contains(sub.explored()[i], tol)) {
            throw std::invalid_argument("coset_index: subgroup element missing from ambient ball");
        }
    }

    const double decidable_bound = sub.radius() + sub.margin();
    std::vector<std::size_t> reps;
    bool all_decidable = true;
    bool shell_new_rep = false;

    for (std::size_t idx : ambient.indices_within(ambient.radius())) {
        const Isometry& g = ambient.explored()[idx];
        bool assigned = false;
        bool indeterminate = false;
        for (std::size_t rep : reps) {
            const Isometry q = compose(inverse(ambient.explored()[rep]), g);
            if (q.tran.norm() > decidable_bound + tol) {
                indeterminate = true;
                continue;
            }
            if (sub.contains(q, tol)) {
                assigned = true;
                break;
            }
        }
        if (!assigned) {
            if (indeterminate) {
                all_decidable = false;
            }
            if (ambient.tran_norms()[idx] > 0.5 * ambient.radius()) {
                shell_new_rep = true;
            }
            reps.push_back(idx);
        }
    }

    CosetIndex result;
    result.index = reps.size();
    result.certified =
        all_decidable && !shell_new_rep && ambient.complete() && sub.complete();
    return result;
}

}  // namespace isogrow
