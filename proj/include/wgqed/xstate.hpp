// xstate.hpp
// Two-qubit density matrices with only diagonal and anti-diagonal entries.
//
//   | a  0  0  w |
//   | 0  b  z  0 |
//   | 0  z* c  0 |
//   | w* 0  0  d |

#pragma once

#include <array>
#include <cmath>

#include "qcore.hpp"

namespace wgqed {

struct XState {
    double a = 1.0;  // |00><00|
    double b = 0.0;  // |01><01|
    double c = 0.0;  // |10><10|
    double d = 0.0;  // |11><11|
    cplx z{};        // <01|rho|10>
    cplx w{};        // <00|rho|11>

    Matrix<4> to_matrix() const {
        Matrix<4> m;
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        m(3, 3) = d;
        m(1, 2) = z;
        m(2, 1) = std::conj(z);
        m(0, 3) = w;
        m(3, 0) = std::conj(w);
        return m;
    }

    // Reads the X entries; whatever sits off the X is ignored (see x_leakage).
    static XState from_matrix(const Matrix<4>& m) {
        XState x;
        x.a = m(0, 0).real();
        x.b = m(1, 1).real();
        x.c = m(2, 2).real();
        x.d = m(3, 3).real();
        x.z = m(1, 2);
        x.w = m(0, 3);
        return x;
    }

    // (a, b, c, d, Re z, Im z, Re w, Im w)
    std::array<double, 8> pack() const { return {a, b, c, d, z.real(), z.imag(), w.real(), w.imag()}; }

    static XState unpack(const std::array<double, 8>& v) {
        return XState{v[0], v[1], v[2], v[3], cplx{v[4], v[5]}, cplx{v[6], v[7]}};
    }

    double trace() const { return a + b + c + d; }

    // Trace, population range and the PSD conditions of both 2x2 blocks.
    bool is_valid(double tol = kStructuralTol) const {
        if (std::abs(trace() - 1.0) > tol) return false;
        for (double p : {a, b, c, d})
            if (p < -tol || p > 1.0 + tol) return false;
        return std::norm(z) <= b * c + tol && std::norm(w) <= a * d + tol;
    }

    friend bool operator==(const XState&, const XState&) = default;
};

// Largest magnitude among the eight entries that an X matrix keeps at zero.
inline double x_leakage(const Matrix<4>& m) {
    double e = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool on_x = (i == j) || (i + j == 3);
            if (!on_x) e = std::max(e, std::abs(m(i, j)));
        }
    return e;
}

inline bool is_x_shaped(const Matrix<4>& m, double tol = 1e-12) { return x_leakage(m) <= tol; }

}  // namespace wgqed
