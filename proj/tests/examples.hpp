#pragma once

#include "kcf/pencil.hpp"

namespace kcf::testing {

// Componentwise difference, for residual checks on sampled trajectories.
inline Vector<double> operator-(const Vector<double>& a, const Vector<double>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
    Vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

inline Pencil<Rational> example1() {
    Matrix<Rational> f{{2, 1, 1, 0, 0, 0, 0}, {1, 3, 1, 1, 0, 0, 0}, {1, 1, 2, 1, 0, 0, 0}, {0, 1, 1, 1, 0, 0, 0},
                       {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 0, 1}};
    Matrix<Rational> g{{1, 1, 1, 0, 0, 0, 1}, {0, 3, 2, 2, 0, 1, 1}, {1, 2, 3, 2, 0, 0, 0}, {0, 2, 2, 2, 0, 0, 0},
                       {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0}};
    return {f, g};
}

inline Pencil<Rational> example2() {
    Matrix<Rational> f{{1, 1, 1, 1, 1}, {0, 1, 1, 0, 1}, {1, 1, 1, 1, 1}, {0, 1, 1, 0, 1}, {1, 0, 1, 0, 0}, {0, 0, 1, 1, 1}};
    Matrix<Rational> g{{1, 2, 2, 1, 2}, {0, 2, 2, 0, 2}, {1, 2, 2, 2, 3}, {0, 2, 3, 1, 3}, {0, 0, 0, 0, 0}, {1, 0, 1, 0, 0}};
    return {f, g};
}

inline Matrix<Rational> example2_P() {
    return {{1, -1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {-1, 0, 1, 0, 0, 0},
            {0, 0, 0, 0, 1, 0},  {0, 0, 0, 0, 0, 1}, {0, -1, 0, 1, 0, 0}};
}

inline Matrix<Rational> example2_Q() {
    return {{0, 0, 1, 1, -1}, {1, 1, -1, -1, 0}, {0, 0, -1, 0, 1}, {1, 0, -1, -1, 1}, {-1, 0, 2, 1, -1}};
}

inline Matrix<Rational> example2_Qp() { return {{0, 0}, {1, 1}, {0, 0}, {1, 0}, {-1, 0}}; }

inline Vector<Rational> example2_consistent_y0() { return {0, -1, 0, 1, -1}; }
inline Vector<Rational> example2_inconsistent_y0() { return {0, 0, 0, 1, 1}; }

// Independent oracle (tests/oracle/derive.py) values.
inline Vector<double> example2_y_at_1() { return {0.0, -12.059830369402256, 0.0, 2.718281828459045, -2.718281828459045}; }
inline Vector<double> example2_y_at_half() {
    return {0.0, -3.787842386217962, 0.0, 1.6487212707001282, -1.6487212707001282};
}

}  // namespace kcf::testing
