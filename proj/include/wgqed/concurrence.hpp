// concurrence.hpp
// Two-qubit concurrence: closed form for X states and the general spectral form.

#pragma once

#include <algorithm>
#include <cmath>

#include "qcore.hpp"
#include "xstate.hpp"

namespace wgqed {

// Negative intermediates above this are rounding noise and clamp to zero.
inline constexpr double kConcurrenceNoise = 1e-9;

// C = 2 max(0, |z| - sqrt(a d), |w| - sqrt(b c))
inline double concurrence_x(const XState& x) {
    for (double p : {x.a, x.b, x.c, x.d})
        if (p < -kStructuralTol)
            throw invalid_input("concurrence_x: negative population " + detail::format_double(p));
    auto root = [](double u, double v) { return std::sqrt(std::max(0.0, u) * std::max(0.0, v)); };
    const double f = std::abs(x.z) - root(x.a, x.d);
    const double g = std::abs(x.w) - root(x.b, x.c);
    const double c = 2.0 * std::max({0.0, f, g});
    return std::clamp(c, 0.0, 1.0);
}

// Wootters: lambda_i are the square roots of the eigenvalues of rho * rho~,
// rho~ = (Y (x) Y) rho* (Y (x) Y). They coincide with the singular values of
// sqrt(rho) (Y (x) Y) sqrt(rho)*, which is how they are computed here.
inline double concurrence_wootters(const Matrix<4>& rho) {
    const auto report = check_density(rho);
    if (report.min_eigenvalue < -kStructuralTol)
        throw invalid_input("concurrence_wootters: matrix is not positive semidefinite (min eigenvalue " +
                            detail::format_double(report.min_eigenvalue) + ")");
    const Matrix<4> yy = tensor(ops::sigma_y(), ops::sigma_y());
    const Matrix<4> s = sqrtm_psd(rho);
    const auto lam = singular_values(Matrix<4>(s * yy * s.conj()));
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return std::clamp(c, 0.0, 1.0);
}

inline double concurrence_wootters(const DensityMatrix<4>& rho) { return concurrence_wootters(rho.matrix()); }

// Pseudo-Werner family: C = 2 max(0, F, G) with
//   F = sqrt(3) (2f - sqrt(2f(1-f))) / 8,  G = -sqrt(3f(1+f)/32).
inline double pw_concurrence_closed(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw invalid_input("pw_concurrence_closed: f must lie in [0, 1]");
    const double big_f = std::sqrt(3.0) * (2.0 * f - std::sqrt(2.0 * f * (1.0 - f))) / 8.0;
    const double big_g = -std::sqrt(3.0 * f * (1.0 + f) / 32.0);
    return 2.0 * std::max({0.0, big_f, big_g});
}

}  // namespace wgqed
