#pragma once

#include "isolab/linalg.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace isolab {

// Roots of unity lying in Q(zeta_m), in a fixed order.
std::vector<FieldScalar> roots_of_unity_in_field();

// Rational roots of a polynomial with rational coefficients (low to high).
std::vector<Rational> rational_roots(const UniPoly& p);

// Distinct roots of p of the form r*u, r rational, u a root of unity in the field.
std::vector<FieldScalar> split_roots(const UniPoly& p);

// Distinct eigenvalues of a semisimple matrix when every one is of the form r*u.
std::optional<std::vector<FieldScalar>> split_eigenvalues(const Mat& M);

std::optional<FieldScalar> sqrt_in_field(const FieldScalar& x);

struct WeightSpace {
    std::vector<FieldScalar> weight;  // eigenvalue of each operator
    Subspace space;
};

using LinearOp = std::function<Vec(const Vec&)>;

// Joint eigenspaces of commuting semisimple operators on an invariant subspace W.
// candidates[k] must contain every eigenvalue of ops[k] on W. Returns nothing
// when the spaces found do not fill W.
std::optional<std::vector<WeightSpace>> joint_decompose(const Subspace& W, const std::vector<LinearOp>& ops,
                                                        const std::vector<std::vector<FieldScalar>>& candidates);

// Distinct pairwise differences a - b.
std::vector<FieldScalar> differences(const std::vector<FieldScalar>& xs);

}  // namespace isolab
