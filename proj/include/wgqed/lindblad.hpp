// lindblad.hpp
// Generic Lindblad right-hand side for small dense systems.

#pragma once

#include <cstddef>
#include <vector>

#include "qcore.hpp"

namespace wgqed {

// rate * (a rho b^H - 1/2 {b^H a, rho}). With a == b this is the usual
// dissipator D[a]; distinct a, b give the cross terms of correlated decay.
template <std::size_t N>
struct LindbladTerm {
    double rate = 0.0;
    Matrix<N> a;
    Matrix<N> b;
};

template <std::size_t N>
struct LindbladEquation {
    Matrix<N> hamiltonian;
    std::vector<LindbladTerm<N>> terms;

    void add_decay(double rate, const Matrix<N>& op) { terms.push_back({rate, op, op}); }
    void add_cross(double rate, const Matrix<N>& a, const Matrix<N>& b) { terms.push_back({rate, a, b}); }

    // d rho / dt
    Matrix<N> apply(const Matrix<N>& rho) const {
        const cplx minus_i{0.0, -1.0};
        Matrix<N> out = minus_i * (hamiltonian * rho - rho * hamiltonian);
        for (const auto& t : terms) {
            if (t.rate == 0.0) continue;
            const Matrix<N> bh = t.b.adjoint();
            const Matrix<N> bha = bh * t.a;
            Matrix<N> d = t.a * rho * bh;
            d -= 0.5 * (bha * rho + rho * bha);
            out += t.rate * d;
        }
        return out;
    }
};

// Row-major vectorization: vec(rho)[i*N + j] = rho(i, j).
template <std::size_t N>
    requires(N * N <= kMaxDim)
Matrix<N * N> to_superoperator(const LindbladEquation<N>& eq) {
    Matrix<N * N> s;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            Matrix<N> basis;
            basis(i, j) = 1.0;
            const Matrix<N> image = eq.apply(basis);
            for (std::size_t k = 0; k < N; ++k)
                for (std::size_t l = 0; l < N; ++l) s(k * N + l, i * N + j) = image(k, l);
        }
    return s;
}

template <std::size_t N>
    requires(N * N <= kMaxDim)
Matrix<N> apply_superoperator(const Matrix<N * N>& s, const Matrix<N>& rho) {
    Matrix<N> out;
    for (std::size_t r = 0; r < N * N; ++r) {
        cplx acc{};
        for (std::size_t c = 0; c < N * N; ++c) acc += s(r, c) * rho.data()[c];
        out.data()[r] = acc;
    }
    return out;
}

}  // namespace wgqed
