#pragma once

#include "isolab/linalg.hpp"

#include <initializer_list>
#include <random>

namespace testing_helpers {

using isolab::FieldScalar;
using isolab::Mat;
using isolab::Vec;

inline Mat mat(std::initializer_list<std::initializer_list<long>> rows) {
    Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto& r : rows) {
        Eigen::Index j = 0;
        for (long v : r) m(i, j++) = FieldScalar(v);
        ++i;
    }
    return m;
}

inline Vec vec(std::initializer_list<long> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (long x : xs) v(i++) = FieldScalar(x);
    return v;
}

inline Mat random_int_mat(std::mt19937_64& rng, int r, int c, int box = 5) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = FieldScalar(static_cast<long>(rng() % (2 * box + 1)) - box);
    return m;
}

inline FieldScalar random_scalar(std::mt19937_64& rng, int box = 5) {
    const int d = isolab::cyclotomic().degree;
    FieldScalar x(0);
    for (int k = 0; k < d; ++k)
        x += FieldScalar(static_cast<long>(rng() % (2 * box + 1)) - box) * FieldScalar::zeta_power(k);
    return x;
}

}  // namespace testing_helpers
