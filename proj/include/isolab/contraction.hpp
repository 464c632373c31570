#pragma once

#include "isolab/cartan.hpp"

#include <string>
#include <vector>

namespace isolab {

// g0 ⋉ g1^a in the basis (g0 basis, g1 basis) taken from the parent algebra.
struct ContractedAlgebra {
    AlgebraPtr parent;
    Automorphism sigma;
    Subspace g0, g1;
    int dim0 = 0, dim1 = 0;
    Mat embedding;                   // columns: basis vectors in parent coordinates
    std::vector<SparseVec> structure; // [e_i, e_j] at i * dim() + j

    int dim() const { return dim0 + dim1; }
    Vec bracket(const Vec& x, const Vec& y) const;
    Mat ad(const Vec& x) const;
    Mat killing() const;
    // Parent coordinates <-> contracted coordinates.
    Vec lift(const Vec& x) const { return multiply(embedding, x); }
    Vec restrict(const Vec& parent_coords) const;

private:
    Mat inverse_;
    friend ContractedAlgebra z2_contract(const Automorphism& sigma);
};

// Verifies the Jacobi identity on all basis triples.
ContractedAlgebra z2_contract(const Automorphism& sigma);

struct Permutation {
    Label alpha, beta, gamma;
    std::string str() const;  // "10,01,11"
};
Permutation parse_permutation(const std::string& s);
std::vector<Permutation> all_permutations();

enum class Variant { a, b };
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

// K = G00 ⋉ N_beta on V = g_alpha ⊕ g_gamma. Variant a lets g_beta^a act by
// (y_alpha, y_gamma) -> (0, [x, y_alpha]); variant b swaps the roles of alpha and gamma.
struct DegeneratedModule {
    QuaternionicDecomposition Q;
    Permutation perm;
    Variant variant;
    Label first, second;  // acted-on summand and the one receiving the image
    Subspace V;
    std::vector<Vec> k_basis;  // g00 basis then g_beta basis, parent coordinates
    int dim_k00 = 0;
    std::vector<Mat> action;   // on V coordinates, one per k basis vector

    int dim_k() const { return static_cast<int>(k_basis.size()); }
    // x in k coordinates, v in parent coordinates (inside V).
    Vec act(const Vec& x, const Vec& v) const;
    Vec act_basis(int i, const Vec& v) const;
    // exp of a nilradical element, exact since the action squares to zero.
    Vec nil_exp(const Vec& x_beta, const Vec& v) const;
    // Bracket of k in k coordinates.
    Vec k_bracket(const Vec& x, const Vec& y) const;
};

// Builds the module and checks nilpotency and the module law on basis elements.
DegeneratedModule degenerate_module(const QuaternionicDecomposition& Q, const Permutation& perm, Variant variant);

struct DualityReport {
    bool invariant = false;
    int gram_rank = 0;
    bool nondegenerate = false;
};
// Pairing kappa(y_alpha, z_alpha) + kappa(y_gamma, z_gamma); throws when it is not K-invariant.
DualityReport duality_check(const DegeneratedModule& Va, const DegeneratedModule& Vb);

struct OrbitReport {
    int max_orbit_dim = 0;
    int bound = 0;  // dim of the receiving summand
    bool witness_found = false;
    Vec witness;
    int samples = 0;
};
// dim N_beta·(y, *) = dim [g_beta, y] for y in the acted-on summand; the generic value
// is read at a certified generic element of its CSS, dense samples only corroborate.
OrbitReport max_nilradical_orbit_dim(const DegeneratedModule& V, Rng& rng, int samples = 8);
int nilradical_orbit_dim(const DegeneratedModule& V, const Vec& y);

struct StabilizerReport {
    Permutation perm;
    Variant variant;
    Vec xi, eta;
    Subspace stabilizer;  // parent coordinates inside g00 ⊕ g_beta
    Subspace predicted;   // (g00^xi)^eta ⊕ g_beta^xi
    int dim_00_xi_eta = 0, dim_beta_xi = 0, dim_second_xi = 0;
    int css_first = 0, css_second_xi = 0, css_big = 0;
    int trdeg_a = 0;  // dim c_first + dim CSS of the receiving summand at xi
    int trdeg_b = 0;  // dim CSS of g_first ⊕ g_second
    bool agree = false;
    bool rosenlicht = false;    // dim V - dim K + dim stabilizer = trdeg
    bool cancellation = false;  // dim g_beta^xi - dim g_second^xi = dim g_beta - dim g_second
    std::vector<int> resampled_dims;
    bool stable = false;
    OrbitReport orbit;

    int stabilizer_dim() const { return stabilizer.dim(); }
    bool ok() const { return stabilizer == predicted && agree && rosenlicht && cancellation && stable; }
};

// Stabilizer in k of a certified generic point, as a nullspace.
Subspace stabilizer_at(const DegeneratedModule& V, const Vec& v);
StabilizerReport generic_stabilizer(const DegeneratedModule& V, Rng& rng, int resamples = 10);

}  // namespace isolab
