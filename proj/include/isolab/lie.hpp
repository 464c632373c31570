#pragma once

#include "isolab/errors.hpp"
#include "isolab/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace isolab {

struct Term {
    int index;
    FieldScalar coeff;
};
using SparseVec = std::vector<Term>;

struct Entry {
    int row, col;
    FieldScalar value;
};
using SparseMat = std::vector<Entry>;

enum class FormConvention { antidiagonal, standard };

// Simple summand in the defining representation.
struct SimpleBlock {
    char type;        // 'A', 'B', 'C', 'D'
    int rep_size;     // size of the defining matrices
    int rep_offset;   // first row/column in the ambient representation
    int basis_offset; // first basis index
    int dim;
    int rank;
    Mat form;         // Gram matrix for orthogonal/symplectic types, empty for sl
};

class LieAlgebra {
public:
    // Build from explicit sparse basis matrices; verifies closure of the bracket.
    LieAlgebra(std::string label, int rep_dim, std::vector<SparseMat> basis,
               std::vector<SimpleBlock> blocks);

    const std::string& label() const { return label_; }
    int rep_dim() const { return rep_dim_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int rank() const;
    std::vector<int> exponents() const;
    int k0() const;
    int k1() const;
    const std::vector<SimpleBlock>& blocks() const { return blocks_; }

    const SparseMat& basis_sparse(int k) const { return basis_[k]; }
    Mat basis_matrix(int k) const;
    Mat to_matrix(const Vec& x) const;
    // Coefficients of X in the basis, or nothing when X is outside the algebra.
    std::optional<Vec> coords(const Mat& X) const;
    Vec coords_checked(const Mat& X) const;

    const SparseVec& structure(int i, int j) const { return sc_[i * dim() + j]; }
    Vec bracket(const Vec& x, const Vec& y) const;
    Vec bracket_basis(int i, const Vec& y) const;
    Mat ad(const Vec& x) const;
    const Mat& killing() const { return killing_; }
    FieldScalar killing(const Vec& x, const Vec& y) const;
    Vec unit(int k) const;
    Vec zero() const { return Vec::Constant(dim(), FieldScalar(0)); }
    Subspace whole() const { return Subspace::full(dim()); }

    // Summands of a direct sum (empty for a simple algebra).
    const std::vector<std::shared_ptr<const LieAlgebra>>& parts() const { return parts_; }
    void set_parts(std::vector<std::shared_ptr<const LieAlgebra>> p) { parts_ = std::move(p); }

private:
    void build_structure_constants();
    void build_killing();

    std::string label_;
    int rep_dim_;
    std::vector<SparseMat> basis_;
    std::vector<SimpleBlock> blocks_;
    std::vector<int> pivot_entries_;  // flattened positions read by coords()
    Mat coord_map_;                   // coords = coord_map_ * X[pivot_entries_]
    std::vector<SparseVec> sc_;
    Mat killing_;
    std::vector<std::shared_ptr<const LieAlgebra>> parts_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

AlgebraPtr make_sl(int n);
AlgebraPtr make_so(int n, FormConvention form = FormConvention::antidiagonal);
AlgebraPtr make_sp(int two_n);
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);
// "sl(4)", "so(8,antidiag)", "so(7,standard)", "sp(6)", "sl(4)+sl(4)"
AlgebraPtr parse_algebra(const std::string& spec);
// Algebra of matrices x with x^T J + J x = 0 for a monomial Gram matrix J.
AlgebraPtr make_form_algebra(const std::string& label, const Mat& J, char type);

// Classical-type tables.
std::vector<int> exponents_of(char type, int rank);

struct Element {
    AlgebraPtr algebra;
    Vec coeffs;

    Element(AlgebraPtr g, Vec c);
    Mat matrix() const { return algebra->to_matrix(coeffs); }
};

Element bracket(const Element& x, const Element& y);
FieldScalar killing(const Element& x, const Element& y);
Mat ad(const Element& x);

// {w in W : [s,w] = 0 for all s in S}
Subspace centralizer(const LieAlgebra& g, const Subspace& S, const Subspace& W);
Subspace centralizer(const LieAlgebra& g, const Vec& x, const Subspace& W);

enum class ElementClass { semisimple, nilpotent, mixed, zero };
ElementClass classify_element(const LieAlgebra& g, const Vec& x);
ElementClass classify_element(const Element& x);
bool is_semisimple(const LieAlgebra& g, const Vec& x);
bool is_nilpotent(const LieAlgebra& g, const Vec& x);
bool is_regular(const LieAlgebra& g, const Vec& x);
bool is_regular(const Element& x);
std::string to_string(ElementClass c);

// Image of each basis vector of W under ad(x), as columns.
Mat bracket_map(const LieAlgebra& g, const Vec& x, const Subspace& W);
bool is_abelian(const LieAlgebra& g, const Subspace& S);
bool brackets_into(const LieAlgebra& g, const Subspace& A, const Subspace& B, const Subspace& C);

}  // namespace isolab
