#pragma once

#include "isolab/lie.hpp"
#include "isolab/rng.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace isolab {

enum class AutKind { inner, outer, composite };
std::string to_string(AutKind k);

struct Automorphism {
    AlgebraPtr algebra;
    Mat map;                     // acts on coefficient vectors
    int order = 1;
    AutKind kind = AutKind::outer;
    std::optional<Mat> witness;  // group matrix s with map(x) = s x s^-1
    std::string description;

    Vec apply(const Vec& x) const { return multiply(map, x); }
    bool is_identity() const;
    bool is_inner() const { return kind == AutKind::inner; }
    Subspace eigenspace(const FieldScalar& lambda) const;
};

// Verifies the automorphism law and Killing invariance, computes the order.
Automorphism make_automorphism(AlgebraPtr g, Mat map, AutKind kind, std::optional<Mat> witness,
                               std::string description);
// Map of coefficient vectors induced by a matrix map on the defining representation.
Mat induced_map(const LieAlgebra& g, const std::function<Mat(const Mat&)>& f);

Automorphism identity_automorphism(AlgebraPtr g);
Automorphism inner_automorphism(AlgebraPtr g, const Mat& s);  // any order
Automorphism inner_involution(AlgebraPtr g, const Mat& s);    // s^2 scalar
// x -> -J x^T J^-1; J = identity gives x -> -x^T.
Automorphism outer_involution_sl(AlgebraPtr g, const std::optional<Mat>& form = std::nullopt);
Automorphism swap_involution(AlgebraPtr g);
Automorphism compose(const Automorphism& a, const Automorphism& b);  // a after b
Automorphism conjugate(const Automorphism& phi, const Automorphism& sigma);  // phi sigma phi^-1
Automorphism block_sum(AlgebraPtr g, const Automorphism& a, const Automorphism& b);
bool operator==(const Automorphism& a, const Automorphism& b);
inline bool operator!=(const Automorphism& a, const Automorphism& b) { return !(a == b); }

// "inner:diag(i,i,-i,-i)", "negtranspose", "negtranspose:sp", "swap",
// "compose:A,B", "both:A", "pair:A|B", "id", "conj:E(1,1)+E(1,2)+i*E(2,1)-i*E(2,2)"
Automorphism parse_automorphism(AlgebraPtr g, const std::string& spec);
Mat parse_group_matrix(const std::string& spec, int n);  // "diag(...)", "antidiag(...)"
Mat parse_matrix_expr(const std::string& spec, int n);   // also "E(1,2)+E(2,1)"

enum class Label { g00, g01, g10, g11 };
inline constexpr std::array<Label, 3> kNonzeroLabels{Label::g01, Label::g10, Label::g11};
std::string to_string(Label l);
Label parse_label(const std::string& s);
// The nonzero label on which sigma_k (k = 1,2,3) acts trivially.
Label fixed_label(int k);
// The label completing {a, b} to all three nonzero labels.
Label third_label(Label a, Label b);

struct QuaternionicDecomposition {
    AlgebraPtr algebra;
    Automorphism sigma1, sigma2, sigma3;
    Subspace g00, g01, g10, g11;

    const Subspace& space(Label l) const;
    std::array<std::array<int, 2>, 2> dim_matrix() const;
    // (-1)-eigenspace of sigma_k, i.e. the sum of the two labels other than fixed_label(k).
    Subspace big_minus(int k) const;
    Subspace big_plus(int k) const;
    const Automorphism& sigma(int k) const;
};

QuaternionicDecomposition quaternionic(const Automorphism& s1, const Automorphism& s2);

struct RelationCheck {
    std::string name;
    bool ok;
};
std::vector<RelationCheck> grading_relations(const QuaternionicDecomposition& Q);
std::vector<RelationCheck> killing_orthogonality(const QuaternionicDecomposition& Q);

struct InvolutionClass {
    bool maximal_rank = false;
    int dim_g0 = 0, dim_g1 = 0;
    // quasi-maximality, only for inner involutions
    std::optional<bool> quasi_maximal;
    std::optional<Vec> regular_semisimple;  // certificate when quasi-maximal
    std::optional<bool> regular_nilpotent_found;
    std::optional<Vec> regular_nilpotent;
    int css_dim = 0;
    int rank_g0 = 0;
};

InvolutionClass classify_involution(const Automorphism& sigma, Rng& rng, bool nilpotent_cross_check = true);

struct Dyad {
    Automorphism phi, sigma2;
    Mat s;
};
Dyad build_dyad(const Automorphism& sigma1, const Vec& torus_direction);

struct CanonicalTriple {
    Automorphism theta, theta_prime;
    Mat g0;  // diagonal square root of s^-1
};
CanonicalTriple canonical_triple(AlgebraPtr g, const Automorphism& mu);

}  // namespace isolab
