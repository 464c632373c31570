#pragma once

#include "isolab/involution.hpp"
#include "isolab/spectrum.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace isolab {

struct CssCertificate {
    bool abelian = false;
    bool witness_semisimple = false;
    bool witness_generic = false;  // z_g(witness) ∩ ambient = space
    bool saturated = false;        // z_g(space) ∩ ambient = space
    bool ok() const { return abelian && witness_semisimple && witness_generic && saturated; }
};

struct CartanSubspace {
    std::string ambient_name;
    Subspace ambient;
    Subspace space;
    Vec witness;
    std::vector<Vec> generators;  // split semisimple spanning set, filled by find_split_css
    CssCertificate certificate;
    int dim() const { return space.dim(); }
};

struct CssSearch {
    int budget = 40;
    long box = 2;
};

CssCertificate certify_css(const LieAlgebra& g, const Subspace& ambient, const Subspace& space, const Vec& witness);

// Dense random x in the ambient space; candidate z_g(x) ∩ ambient. For a
// subalgebra ambient (a +1 eigenspace) the result is a Cartan subalgebra of it.
CartanSubspace find_css(const LieAlgebra& g, const Subspace& ambient, Rng& rng, const std::string& name = "",
                        CssSearch opts = {});

// Greedy build from sparse elements (basis vectors and transpose partners)
// with split spectrum, rational ones first. Needed wherever explicit weights are used.
CartanSubspace find_split_css(const LieAlgebra& g, const Subspace& ambient, Rng& rng, const std::string& name = "",
                              int budget = 30);

// x in S with z_g(x) = z_g(S).
Vec generic_element(const LieAlgebra& g, const Subspace& S, Rng& rng, int budget = 40);

struct CoincidenceEntry {
    Label alpha, gamma, beta;
    int big;  // sigma index whose (-1)-space is g_alpha + g_gamma
    int little_dim = 0, big_dim = 0;
    bool dims_equal = false;
    bool saturated = false;     // z_g(c_alpha) ∩ (g_alpha + g_gamma) = c_alpha
    int witness_rank = 0;       // rank of ad x : g_beta -> g_gamma at a generic x in c_alpha
    bool witness_full = false;  // witness_rank = dim g_gamma
    bool coincide = false;
};

struct CoincidenceTable {
    std::array<CartanSubspace, 3> little;  // c01, c10, c11
    std::array<CartanSubspace, 3> big;     // c for sigma1, sigma2, sigma3
    std::vector<CoincidenceEntry> entries; // all six ordered pairs

    const CartanSubspace& little_css(Label l) const;
    const CartanSubspace& big_css(int k) const { return big.at(k - 1); }
    const CoincidenceEntry& entry(Label alpha, Label gamma) const;
};

// Index k of the sigma whose (-1)-space is g_alpha + g_gamma.
int big_index(Label alpha, Label gamma);

// Decides whether c_alpha is also a CSS of g_alpha + g_gamma by three methods;
// disagreement raises InternalInconsistency.
CoincidenceEntry coincidence(const QuaternionicDecomposition& Q, const CartanSubspace& c_alpha, Label alpha,
                             Label gamma, int big_dim, Rng& rng);
CoincidenceTable rank_table(const QuaternionicDecomposition& Q, Rng& rng);

struct RaspredResult {
    Label beta, gamma;
    int dim_beta = 0, dim_gamma = 0;  // dim [g_beta, x], dim [g_gamma, x]
    bool equal() const { return dim_beta == dim_gamma; }
};
RaspredResult verify_raspred(const QuaternionicDecomposition& Q, const Vec& x, Label alpha);

// Conclusions for a decomposition with g11 = 0.
std::vector<RelationCheck> g11_zero_lemma(const QuaternionicDecomposition& Q);

Subspace bracket_span(const LieAlgebra& g, const Subspace& A, const Subspace& B);

// Joint eigenspaces of ad(t) for split semisimple commuting t on an invariant W.
std::optional<std::vector<WeightSpace>> torus_weights(const LieAlgebra& g, const std::vector<Vec>& torus,
                                                      const Subspace& W);

// Nilpotent elements of W from the positive weight spaces of a split torus
// under random linear orderings; returns the first one `accept` takes.
std::optional<Vec> borel_nilpotent_search(const LieAlgebra& g, const std::vector<Vec>& torus, const Subspace& W,
                                          Rng& rng, const std::function<bool(const Vec&)>& accept,
                                          int orderings = 64);

struct RestrictedRootSystem {
    std::vector<Vec> css_basis;
    std::vector<std::vector<FieldScalar>> roots;  // values on css_basis
    std::vector<Subspace> root_spaces;
    std::vector<int> multiplicities;
    Subspace zero_space;
};

RestrictedRootSystem restricted_roots(const LieAlgebra& g, const CartanSubspace& c);
// +1 on even levels of ell, -1 on odd levels; verified to be an involution commuting with sigma.
Automorphism sigma3_from_form(AlgebraPtr g, const RestrictedRootSystem& phi, const std::vector<long>& ell,
                              const Automorphism& sigma);

}  // namespace isolab
