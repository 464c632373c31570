#pragma once

#include "isolab/contraction.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace isolab {

using Evaluator = std::function<FieldScalar(const Vec&)>;

enum class InvariantKind { charpoly, pfaffian };

// Polynomial invariant of G, evaluated exactly at parent coordinates.
struct InvariantOracle {
    AlgebraPtr algebra;
    Subspace domain;
    int degree = 0;
    InvariantKind kind = InvariantKind::charpoly;
    int block = 0;  // simple summand the invariant reads
    Evaluator eval;

    std::string name() const;  // "c4", "pf", "c2[1]" on the second summand
    FieldScalar operator()(const Vec& v) const { return eval(v); }
};

// Elementary symmetric functions of the eigenvalues of each simple block,
// restricted to the basic degrees of its type; on type D the top one is
// replaced by the Pfaffian.
std::vector<InvariantOracle> charpoly_invariants(AlgebraPtr g, const Subspace& domain);
InvariantOracle pfaffian_invariant(AlgebraPtr g, const Subspace& domain, int block = 0);

// Homogeneity and invariance under exp of nilpotent basis elements of g, at exact sample points.
bool self_test(const InvariantOracle& F, Rng& rng, int points = 3);

// Univariate polynomial t -> F(p + t d), recovered from degree+1 exact values.
UniPoly restrict_to_line(const Evaluator& F, int degree, const Vec& p, const Vec& d);

// Components of F on first ⊕ second by degree in the first summand.
struct BiHomogSplit {
    InvariantOracle source;
    Subspace first, second;
    std::vector<int> nonzero;  // degrees j in the first summand with a nonzero component
    int top = -1;              // max degree in first (F•)
    int bottom = -1;           // min degree in first, i.e. max degree in second (F_•)

    FieldScalar component(int j, const Vec& y0, const Vec& y1) const;
    // Component j as a function on first ⊕ second (splits its argument by projection).
    Evaluator component_evaluator(int j) const;
    std::pair<int, int> bidegree(int j) const { return {j, source.degree - j}; }
};
BiHomogSplit bihomog_extract(const InvariantOracle& F, const Subspace& first, const Subspace& second, Rng& rng,
                             int samples = 6);

struct InvarianceReport {
    bool ok = true;
    int points = 0;
    std::string failure;  // which identity broke
    std::optional<Vec> counterexample;
};
// Nilradical: F(exp(x)·v) = F(v); reductive part: d/de F(v + e x·v) = 0 at e = 0.
InvarianceReport verify_invariance(const Evaluator& F, int degree, const DegeneratedModule& V, Rng& rng,
                                   int points = 20);
// The component of F of top degree in the acted-on summand of V.
Evaluator contracted_invariant(const InvariantOracle& F, const DegeneratedModule& V, Rng& rng);

// Partial derivatives along the basis of domain.
Vec gradient(const Evaluator& F, int degree, const Vec& v, const Subspace& domain);
int gradient_rank(const std::vector<InvariantOracle>& Fs, const Vec& v, const Subspace& domain);
bool independence_at(const Vec& e, const std::vector<InvariantOracle>& Fs, const Subspace& domain);

// Exact vanishing of F on a linear subspace: checked on a grid of (degree+1)^dim
// points, which certifies it when the grid fits the budget.
struct VanishingTest {
    bool vanishes = false;
    bool certified = false;
};
VanishingTest vanishes_on(const InvariantOracle& F, const Subspace& S, Rng& rng, int grid_budget = 4096);

struct VanishingEntry {
    std::string name;
    int degree = 0;
    bool vanishes = false;
    bool certified = false;
};
struct VanishingReport {
    bool condition_ok = false;  // z_g(c10) ∩ g1* is a Cartan subspace of g1*
    std::string condition_failure;
    int dim_c10 = 0, dim_big = 0, k = 0;  // k = dim CSS(g1*) - dim c10
    std::vector<VanishingEntry> entries;
    int vanishing = 0;
    int vanishing_independent = 0;
    bool translates_agree = true;  // values at G00-translates of c10 match
    std::optional<bool> count_matches;  // only for a basic family
};
// X is the closure of G00·c10 in g1*; G0*-invariants are evaluated on c10 and
// spot-checked on translates by exp of nilpotent elements of g00. Oracles that
// vanish identically on g1* are skipped. When strict,
// a failed condition on z_g(c10) ∩ g1* throws InvalidInput; otherwise it is recorded.
VanishingReport vanishing_on_X(const QuaternionicDecomposition& Q, const std::vector<InvariantOracle>& Fs, Rng& rng,
                               bool basic_family, bool strict = true);

// Degrees of a maximal family of oracles with independent gradients at a generic point of the domain.
std::vector<int> independent_degrees(const std::vector<InvariantOracle>& Fs, const Subspace& domain, Rng& rng);

// exp(N) for a nilpotent matrix, exact.
Mat exp_nilpotent(const Mat& N);

}  // namespace isolab
