#pragma once

#include "isogrow/isometry.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace isogrow {

// Two distinct enumerated elements closer than the near-collision bound;
// the generated group is probably not discrete.
struct NonDiscreteGroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// g does not restrict to V as a translation along V.
struct NotTranslationOnV : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GroupSpec {
    int dim;
    std::vector<Isometry> generators;

    GroupSpec(int n, std::vector<Isometry> gens);
    double max_generator_tran() const;
};

// Breadth-first closure of the generated group inside a translation-norm
// ball. Exploration retains elements with |tran| <= radius + margin; the
// official ball is the subset with |tran| <= radius. `complete` certifies
// that one full frontier expansion added nothing new within the bound --
// an honest heuristic, not a proof that no element is reachable only
// through larger intermediates.
class GroupBall {
public:
    const GroupSpec& spec() const { return spec_; }
    double radius() const { return radius_; }
    double margin() const { return margin_; }
    bool complete() const { return complete_; }
    int max_word_length() const { return max_word_length_; }

    // All explored elements (|tran| <= radius + margin) in BFS order;
    // element 0 is the identity.
    const std::vector<Isometry>& explored() const { return elems_; }
    const std::vector<double>& tran_norms() const { return norms_; }
    int word_length(std::size_t idx) const { return word_len_[idx]; }

    // Indices of elements with |tran| <= r, ascending by norm.
    std::vector<std::size_t> indices_within(double r) const;
    std::size_t count_within(double r) const;

    std::optional<std::size_t> find(const Isometry& g, double tol = kDefaultTol) const;
    bool contains(const Isometry& g, double tol = kDefaultTol) const;

private:
    friend GroupBall enumerate_ball(const GroupSpec&, double, double, int, std::size_t);

    explicit GroupBall(GroupSpec spec) : spec_(std::move(spec)) {}
    std::size_t insert(Isometry g, int word_len);

    GroupSpec spec_;
    double radius_ = 0.0;
    double margin_ = 0.0;
    double tol_ = kDefaultTol;
    bool complete_ = false;
    int max_word_length_ = 0;
    std::vector<Isometry> elems_;
    std::vector<double> norms_;
    std::vector<int> word_len_;
    std::unordered_map<QuantKey, std::vector<std::size_t>, QuantKeyHash> index_;
};

// margin < 0 selects the default 2 * max generator translation norm.
// Hitting max_elements flags the result incomplete rather than truncating
// silently; suspected non-discreteness throws NonDiscreteGroup.
GroupBall enumerate_ball(const GroupSpec& spec, double r, double margin = -1.0,
                         int max_words = 256, std::size_t max_elements = 500000);

// Translation vectors of the ball elements whose orthogonal part is the
// identity, excluding the zero vector.
std::vector<Vector> translation_subgroup(const GroupBall& ball, double tol = kDefaultTol);

struct LatticeBasis {
    std::vector<Vector> vectors;
    int rank() const { return static_cast<int>(vectors.size()); }
};

// Size-reduced basis of the discrete additive subgroup generated by the
// inputs. Throws std::runtime_error when the inputs fail the integer
// representation test against the reduced basis.
LatticeBasis lattice_basis(const std::vector<Vector>& translations, double tol = kDefaultTol);

// Integer coordinates of v in the basis, or nullopt when v is not an
// integer combination within tol.
std::optional<std::vector<long>> lattice_coordinates(const LatticeBasis& basis, const Vector& v,
                                                     double tol = kDefaultTol);

// Translation vector of g restricted to V. Throws NotTranslationOnV when
// g does not act on V as a translation parallel to V.
Vector tran_V(const Isometry& g, const AffineSubspace& V, double tol = kDefaultTol);

struct TranslationPair {
    std::vector<Isometry> subgroup_generators;
    AffineSubspace V;
};

struct PairReport {
    bool translations_on_V = false;     // every g maps V to V and translates it
    bool identity_on_parallel = false;  // ort(g) is identity on the direction space
    bool preserves_distance = false;    // d(x, V) == d(g(x), V) on probes
    bool cocompact_rank = false;        // proxy: tran_V lattice rank == dim V
    int lattice_rank = 0;
    std::optional<std::size_t> failing_element;

    bool all_pass() const {
        return translations_on_V && identity_on_parallel && preserves_distance && cocompact_rank;
    }
};

PairReport verify_translation_pair(const GroupSpec& spec, const TranslationPair& pair, double r);

struct CosetIndex {
    std::size_t index = 0;
    bool certified = false;
};

// Number of distinct left cosets g * Sub among ambient elements. Certified
// when both balls are complete, every membership test was decidable inside
// the sub ball, and no new coset representative appeared in the outer half
// of the ambient radius.
CosetIndex coset_index(const GroupBall& ambient, const GroupBall& sub,
                       double tol = kDefaultTol);

}  // namespace isogrow
