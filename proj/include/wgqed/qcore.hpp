// qcore.hpp
// Dense complex linear algebra for 2-, 4-, 8- and 16-dimensional spaces.
//
// Basis convention used throughout the library: |0> is the ground state and
// |1> the excited state of a qubit. Multi-qubit indices are fused row-major
// with the left tensor factor as the slow index, so for three qubits written
// c (x) b (x) a the basis index is 4*c + 2*b + a.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>

#include "errors.hpp"

namespace wgqed {

using cplx = std::complex<double>;

inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr std::size_t kMaxDim = 16;

template <std::size_t N>
class Matrix {
    static_assert(N >= 1 && N <= kMaxDim, "dimension must be in [1, 16]");

public:
    static constexpr std::size_t dim = N;

    constexpr Matrix() = default;

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::array<double, N>& d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * N + j]; }

    std::array<cplx, N * N>& data() { return data_; }
    const std::array<cplx, N * N>& data() const { return data_; }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(cplx s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    Matrix adjoint() const {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    Matrix conj() const {
        Matrix r;
        for (std::size_t k = 0; k < N * N; ++k) r.data_[k] = std::conj(data_[k]);
        return r;
    }

    cplx trace() const {
        cplx t{};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    // max |m_ij - conj(m_ji)|
    double hermiticity_error() const {
        double e = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i; j < N; ++j)
                e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return e;
    }

private:
    std::array<cplx, N * N> data_{};
};

inline double max_abs_diff(const auto& a, const auto& b) { return (a - b).max_abs(); }

template <std::size_t N>
cplx expectation_trace(const Matrix<N>& a, const Matrix<N>& b) {
    // tr(a b) without forming the product
    cplx t{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) t += a(i, k) * b(k, i);
    return t;
}

// Kronecker product. Products larger than 16 dimensions are not expressible.
template <std::size_t N, std::size_t M>
    requires(N * M <= kMaxDim)
Matrix<N * M> tensor(const Matrix<N>& a, const Matrix<M>& b) {
    Matrix<N * M> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < M; ++k)
                for (std::size_t l = 0; l < M; ++l) r(i * M + k, j * M + l) = aij * b(k, l);
        }
    return r;
}

// ---------------------------------------------------------------------------
// Single-qubit and two-qubit operators.

namespace ops {

inline Matrix<2> sigma_minus() {  // |0><1|, lowers excited -> ground
    Matrix<2> m;
    m(0, 1) = 1.0;
    return m;
}
inline Matrix<2> sigma_plus() { return sigma_minus().adjoint(); }
inline Matrix<2> sigma_x() {
    Matrix<2> m;
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}
inline Matrix<2> sigma_y() {
    Matrix<2> m;
    m(0, 1) = cplx{0.0, -1.0};
    m(1, 0) = cplx{0.0, 1.0};
    return m;
}
// Pauli Z in the computational basis, diag(+1, -1).
inline Matrix<2> sigma_z() { return Matrix<2>::diagonal({1.0, -1.0}); }
inline Matrix<2> excited_projector() { return Matrix<2>::diagonal({0.0, 1.0}); }

// sigma_- (x) sigma_+ + sigma_+ (x) sigma_-
inline Matrix<4> exchange_xy() {
    return tensor(sigma_minus(), sigma_plus()) + tensor(sigma_plus(), sigma_minus());
}

}  // namespace ops

// ---------------------------------------------------------------------------
// Hermitian eigen-decomposition (cyclic complex Jacobi).

template <std::size_t N>
struct HermitianEigen {
    std::array<double, N> values{};  // ascending
    Matrix<N> vectors;               // column k is the eigenvector of values[k]
};

namespace detail {

inline std::string format_double(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

template <std::size_t N>
void require_hermitian(const Matrix<N>& m, double tol) {
    const double scale = std::max(1.0, m.max_abs());
    const double asym = m.hermiticity_error();
    if (asym > tol * scale)
        throw invalid_input("matrix is not Hermitian: max asymmetry " + format_double(asym));
}

}  // namespace detail

template <std::size_t N>
HermitianEigen<N> herm_eigen(const Matrix<N>& m, double tol = kStructuralTol) {
    detail::require_hermitian(m, tol);

    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    Matrix<N> a;
    for (std::size_t i = 0; i < N; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < N; ++j) {
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    Matrix<N> v = Matrix<N>::identity();

    const double scale = std::max(a.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-17 * scale) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq_abs = std::abs(a(p, q));
                if (apq_abs <= 1e-300) continue;
                const cplx phase = a(p, q) / apq_abs;  // e^{i theta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq_abs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J = diag(1, e^{-i theta}) * [[c, s], [-s, c]] on the (p, q) plane.
                const cplx jpp = c;
                const cplx jpq = s;
                const cplx jqp = -s * std::conj(phase);
                const cplx jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < N; ++k) {  // a <- a J
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < N; ++k) {  // a <- J^H a
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < N; ++k) {  // v <- v J
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::array<std::size_t, N> order{};
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigen<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

template <std::size_t N>
std::array<double, N> herm_eigvals(const Matrix<N>& m, double tol = kStructuralTol) {
    return herm_eigen(m, tol).values;
}

// V diag(f(lambda)) V^H for a Hermitian matrix.
template <std::size_t N, class F>
Matrix<N> herm_function(const HermitianEigen<N>& eig, F&& f) {
    Matrix<N> r;
    for (std::size_t k = 0; k < N; ++k) {
        const cplx fk = f(eig.values[k]);
        if (fk == cplx{}) continue;
        for (std::size_t i = 0; i < N; ++i) {
            const cplx vik = eig.vectors(i, k) * fk;
            for (std::size_t j = 0; j < N; ++j) r(i, j) += vik * std::conj(eig.vectors(j, k));
        }
    }
    return r;
}

// exp(i * sign * theta * h) for Hermitian h.
template <std::size_t N>
Matrix<N> expm_skew(const Matrix<N>& h, double theta, int sign) {
    if (sign != 1 && sign != -1) throw invalid_input("expm_skew: sign must be +1 or -1");
    const auto eig = herm_eigen(h);
    const double s = sign * theta;
    return herm_function(eig, [s](double lam) { return std::polar(1.0, s * lam); });
}

// Principal square root of a positive semidefinite matrix. Eigenvalues below
// `floor` (relative to the largest) are treated as exact zeros; rounding noise
// at the 1e-17 level would otherwise surface as 1e-9 after the square root.
template <std::size_t N>
Matrix<N> sqrtm_psd(const Matrix<N>& m, double floor = 1e-14) {
    const auto eig = herm_eigen(m);
    const double cut = floor * std::max(1.0, std::abs(eig.values[N - 1]));
    return herm_function(eig, [cut](double lam) { return cplx{lam > cut ? std::sqrt(lam) : 0.0}; });
}

// Singular values (descending) by one-sided Jacobi. Absolute accuracy is of
// order eps * ||m|| even for zero singular values, unlike sqrt(eig(m m^H)).
template <std::size_t N>
std::array<double, N> singular_values(Matrix<N> m) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma{};
                for (std::size_t k = 0; k < N; ++k) {
                    alpha += std::norm(m(k, p));
                    beta += std::norm(m(k, q));
                    gamma += std::conj(m(k, p)) * m(k, q);
                }
                const double g_abs = std::abs(gamma);
                if (g_abs <= 1e-16 * std::sqrt(alpha * beta) || g_abs <= 1e-300) continue;
                rotated = true;
                const cplx phase = gamma / g_abs;
                const double tau = (beta - alpha) / (2.0 * g_abs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = mkp * jpp + mkq * jqp;
                    m(k, q) = mkp * jpq + mkq * jqq;
                }
            }
        }
        if (!rotated) break;
    }
    std::array<double, N> sv{};
    for (std::size_t j = 0; j < N; ++j) {
        double s2 = 0.0;
        for (std::size_t k = 0; k < N; ++k) s2 += std::norm(m(k, j));
        sv[j] = std::sqrt(s2);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

// ---------------------------------------------------------------------------
// Density matrices.

struct InvariantReport {
    double trace_error = 0.0;        // |tr rho - 1|
    double hermiticity_error = 0.0;  // max |rho_ij - conj(rho_ji)|
    double min_eigenvalue = 0.0;

    bool ok(double tol) const {
        return trace_error <= tol && hermiticity_error <= tol && min_eigenvalue >= -tol;
    }
};

template <std::size_t N>
InvariantReport check_density(const Matrix<N>& m) {
    InvariantReport r;
    r.trace_error = std::abs(m.trace() - 1.0);
    r.hermiticity_error = m.hermiticity_error();
    // eigenvalues of the Hermitian part; asymmetry is reported separately
    const Matrix<N> herm = 0.5 * (m + m.adjoint());
    r.min_eigenvalue = herm_eigvals(herm)[0];
    return r;
}

template <std::size_t N>
class DensityMatrix {
public:
    static constexpr std::size_t dim = N;

    explicit DensityMatrix(const Matrix<N>& m, double tol = kStructuralTol) : m_(m), tol_(tol) {
        const auto r = check_density(m);
        if (!r.ok(tol)) {
            throw invariant_violation("not a density matrix: trace error " + detail::format_double(r.trace_error) +
                                      ", asymmetry " + detail::format_double(r.hermiticity_error) +
                                      ", min eigenvalue " + detail::format_double(r.min_eigenvalue));
        }
    }

    const Matrix<N>& matrix() const { return m_; }
    double tolerance() const { return tol_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix<N> m_;
    double tol_;
};

enum class Subsystem { first, middle, last };

// Trace out one qubit of a three-qubit operator.
inline Matrix<4> partial_trace(const Matrix<8>& rho, Subsystem traced) {
    // bit position of the traced qubit in the fused index (first = slowest)
    const std::size_t shift = traced == Subsystem::first ? 2 : traced == Subsystem::middle ? 1 : 0;
    auto expand = [shift](std::size_t reduced, std::size_t bit) {
        const std::size_t low_mask = (std::size_t{1} << shift) - 1;
        const std::size_t low = reduced & low_mask;
        const std::size_t high = reduced >> shift;
        return (high << (shift + 1)) | (bit << shift) | low;
    };
    Matrix<4> r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t b = 0; b < 2; ++b) r(i, j) += rho(expand(i, b), expand(j, b));
    return r;
}

inline DensityMatrix<4> partial_trace(const DensityMatrix<8>& rho, Subsystem traced) {
    return DensityMatrix<4>(partial_trace(rho.matrix(), traced), rho.tolerance());
}

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
template <std::size_t N>
double fidelity(const Matrix<N>& rho, const Matrix<N>& sigma) {
    const Matrix<N> s = sqrtm_psd(rho);
    const auto vals = herm_eigvals(s * sigma * s, 1e-8);
    const double cut = 1e-14 * std::max(1.0, vals[N - 1]);
    double acc = 0.0;
    for (double v : vals)
        if (v > cut) acc += std::sqrt(v);
    return acc * acc;
}

}  // namespace wgqed
