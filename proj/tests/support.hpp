#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <wgqed/qcore.hpp>
#include <wgqed/xstate.hpp>

namespace wgqed::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <std::size_t N>
Matrix<N> random_matrix(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix<N> m;
    for (auto& v : m.data()) v = cplx{n(rng), n(rng)};
    return m;
}

template <std::size_t N>
Matrix<N> random_hermitian(Rng& rng) {
    const Matrix<N> a = random_matrix<N>(rng);
    return 0.5 * (a + a.adjoint());
}

// A A^dagger / tr, optionally of reduced rank
template <std::size_t N>
Matrix<N> random_density(Rng& rng, std::size_t rank = N) {
    Matrix<N> a = random_matrix<N>(rng);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = rank; j < N; ++j) a(i, j) = 0.0;
    Matrix<N> rho = a * a.adjoint();
    return (1.0 / rho.trace().real()) * rho;
}

// Valid X state: random populations, coherences inside their PSD discs.
// Every few draws one coherence is pushed to the boundary.
inline XState random_xstate(Rng& rng) {
    std::exponential_distribution<double> e(1.0);
    double p[4];
    double sum = 0.0;
    for (double& v : p) sum += (v = e(rng));
    XState x{p[0] / sum, p[1] / sum, p[2] / sum, p[3] / sum, {}, {}};
    const double edge = uniform(rng) < 0.2 ? 1.0 : uniform(rng);
    x.z = std::polar(edge * std::sqrt(x.b * x.c), uniform(rng, -M_PI, M_PI));
    x.w = std::polar(uniform(rng) * std::sqrt(x.a * x.d), uniform(rng, -M_PI, M_PI));
    return x;
}

template <std::size_t N>
double max_abs(const std::array<double, N>& a, const std::array<double, N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace wgqed::testing
