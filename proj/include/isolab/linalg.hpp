#pragma once

#include "isolab/field.hpp"

#include <string>
#include <utility>
#include <vector>

namespace isolab {

// Rank over the exact field by fraction-free (Bareiss) elimination.
template <typename Derived>
int rank(const Eigen::MatrixBase<Derived>& M) {
    using S = typename Derived::Scalar;
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> a = M;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    S prev(1);
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && is_zero(a(p, c))) ++p;
        if (p == rows) continue;
        if (p != r) a.row(p).swap(a.row(r));
        const S piv = a(r, c);
        const S prev_inv = S(1) / prev;
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            const S f = a(i, c);
            for (Eigen::Index j = c + 1; j < cols; ++j) {
                S v = piv * a(i, j);
                if (!is_zero(f) && !is_zero(a(r, j))) v -= f * a(r, j);
                a(i, j) = is_zero(v) ? v : v * prev_inv;
            }
            a(i, c) = S(0);
        }
        prev = piv;
        ++r;
    }
    return static_cast<int>(r);
}

// Determinant by Bareiss elimination.
template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& M) {
    using S = typename Derived::Scalar;
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> a = M;
    const Eigen::Index n = a.rows();
    if (n == 0) return S(1);
    S prev(1);
    bool neg = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        Eigen::Index p = k;
        while (p < n && is_zero(a(p, k))) ++p;
        if (p == n) return S(0);
        if (p != k) {
            a.row(p).swap(a.row(k));
            neg = !neg;
        }
        const S prev_inv = S(1) / prev;
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) * prev_inv;
        prev = a(k, k);
    }
    return neg ? S(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

// Coefficients (low to high) of det(t I - A), Berkowitz's division-free
// recurrence. Works over any commutative ring scalar.
template <typename Derived>
std::vector<typename Derived::Scalar> charpoly(const Eigen::MatrixBase<Derived>& A) {
    using S = typename Derived::Scalar;
    const Eigen::Index n = A.rows();
    std::vector<S> q{S(1)};  // high to low
    std::vector<S> v, w, c;
    for (Eigen::Index r = 0; r < n; ++r) {
        c.assign(r + 2, S(0));
        c[0] = S(1);
        c[1] = -A(r, r);
        v.assign(r, S(0));
        for (Eigen::Index i = 0; i < r; ++i) v[i] = A(i, r);
        for (Eigen::Index k = 0; k < r; ++k) {
            S acc(0);
            for (Eigen::Index j = 0; j < r; ++j)
                if (!is_zero(A(r, j)) && !is_zero(v[j])) acc += A(r, j) * v[j];
            c[k + 2] = -acc;
            if (k + 1 == r) break;
            w.assign(r, S(0));
            for (Eigen::Index i = 0; i < r; ++i)
                for (Eigen::Index j = 0; j < r; ++j)
                    if (!is_zero(A(i, j)) && !is_zero(v[j])) w[i] += A(i, j) * v[j];
            v.swap(w);
        }
        std::vector<S> nq(r + 2, S(0));
        for (Eigen::Index i = 0; i < r + 2; ++i)
            for (Eigen::Index j = 0; j <= std::min(i, r); ++j)
                if (!is_zero(c[i - j]) && !is_zero(q[j])) nq[i] += c[i - j] * q[j];
        q.swap(nq);
    }
    std::vector<S> low(q.rbegin(), q.rend());
    return low;
}

struct Echelon {
    Mat R;                    // reduced row echelon form, zero rows dropped
    std::vector<int> pivots;  // pivot column per row
};

Echelon rref(const Mat& M);
Mat inverse(const Mat& M);
Mat multiply(const Mat& A, const Mat& B);
Vec multiply(const Mat& A, const Vec& x);
bool is_zero_matrix(const Mat& A);
Mat identity(int n);

// Subspace of k^n stored by its canonical RREF basis (rows).
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : n_(ambient), b_(0, ambient) {}

    static Subspace span(const Mat& rows);
    static Subspace span(int ambient, const std::vector<Vec>& vectors);
    static Subspace full(int ambient);
    static Subspace coordinate(int ambient, const std::vector<int>& indices);

    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(b_.rows()); }
    bool is_zero() const { return b_.rows() == 0; }
    const Mat& basis() const { return b_; }
    const std::vector<int>& pivots() const { return piv_; }
    Vec vector(int k) const { return b_.row(k).transpose(); }

    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    // Coordinates of a member vector in the echelon basis.
    Vec coords(const Vec& v) const;
    Vec from_coords(const Vec& c) const;
    // Rows N with v in this subspace iff N v = 0.
    Mat equations() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && a.b_.rows() == b.b_.rows() && a.b_ == b.b_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    int n_ = 0;
    Mat b_;
    std::vector<int> piv_;
};

Subspace nullspace(const Mat& M);
Subspace intersect(const Subspace& A, const Subspace& B);
Subspace sum(const Subspace& A, const Subspace& B);

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<FieldScalar> low_to_high);
    static UniPoly constant(const FieldScalar& c);
    static UniPoly monomial(int k, const FieldScalar& c = FieldScalar(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldScalar>& coeffs() const { return c_; }
    FieldScalar coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : FieldScalar(0); }
    FieldScalar leading() const { return c_.empty() ? FieldScalar(0) : c_.back(); }

    FieldScalar operator()(const FieldScalar& x) const;
    Mat operator()(const Mat& X) const;
    UniPoly derivative() const;
    UniPoly monic() const;
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    std::string str() const;

private:
    std::vector<FieldScalar> c_;
};

UniPoly gcd(UniPoly a, UniPoly b);
UniPoly minimal_polynomial(const Mat& M);
bool is_squarefree(const UniPoly& p);
UniPoly interpolate(const std::vector<std::pair<FieldScalar, FieldScalar>>& points);

// Pfaffian of a skew-symmetric matrix by pivoted elimination.
FieldScalar pfaffian(const Mat& A);

}  // namespace isolab
