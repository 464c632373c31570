#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace isolab {

using Rational = mpq_class;

// Global cyclotomic configuration. Elements built under one order must not be
// mixed with elements built under another.
struct CyclotomicConfig {
    int m = 8;
    int degree = 4;
    std::vector<Rational> phi;  // monic, low to high, size degree+1
};

const CyclotomicConfig& cyclotomic();
void set_cyclotomic_order(int m);
int cyclotomic_order();

// Element of Q(zeta_m) as a polynomial in zeta_m of degree < phi(m).
// Trailing zero coefficients are trimmed, so zero is the empty vector and
// rationals have at most one coefficient.
class FieldScalar {
public:
    FieldScalar() = default;
    FieldScalar(int v) : FieldScalar(Rational(v)) {}
    FieldScalar(long v) : FieldScalar(Rational(v)) {}
    FieldScalar(const Rational& q);

    static FieldScalar zeta_power(long k);
    // exp(2 pi i k / order) when it lies in the field.
    static std::optional<FieldScalar> root_of_unity(long order, long k);
    static FieldScalar imag_unit();
    static FieldScalar parse(const std::string& text);

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    Rational rational() const;
    Rational coeff(int k) const;
    std::vector<Rational> coefficients() const;  // padded to the field degree
    const std::vector<Rational>& raw() const { return c_; }

    FieldScalar inverse() const;

    FieldScalar& operator+=(const FieldScalar& o);
    FieldScalar& operator-=(const FieldScalar& o);
    FieldScalar& operator*=(const FieldScalar& o);
    FieldScalar& operator/=(const FieldScalar& o) { return *this *= o.inverse(); }

    friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
    friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
    friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
    friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
    FieldScalar operator-() const;

    friend bool operator==(const FieldScalar& a, const FieldScalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FieldScalar& a, const FieldScalar& b) { return !(a == b); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const FieldScalar& x) { return os << x.str(); }

private:
    explicit FieldScalar(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    void trim();
    std::vector<Rational> c_;
};

inline bool is_zero(const FieldScalar& x) { return x.is_zero(); }

}  // namespace isolab

namespace Eigen {
template <>
struct NumTraits<isolab::FieldScalar> : GenericNumTraits<isolab::FieldScalar> {
    typedef isolab::FieldScalar Real;
    typedef isolab::FieldScalar NonInteger;
    typedef isolab::FieldScalar Nested;
    typedef isolab::FieldScalar Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace isolab {

using Mat = Eigen::Matrix<FieldScalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<FieldScalar, Eigen::Dynamic, 1>;

}  // namespace isolab
