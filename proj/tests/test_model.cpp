#include <gtest/gtest.h>

#include <wgqed/model.hpp>

#include "support.hpp"

using namespace wgqed;
using wgqed::testing::Rng;

namespace {

// Independent brute-force right-hand side of the two-qubit master equation,
// assembled from 4x4 index arithmetic rather than the library's operators.
// Basis index 2*qa + qb, 0 = ground.
using M4 = std::array<std::array<cplx, 4>, 4>;

M4 mul(const M4& x, const M4& y) {
    M4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) r[i][j] += x[i][k] * y[k][j];
    return r;
}

M4 dag(const M4& x) {
    M4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = std::conj(x[j][i]);
    return r;
}

M4 lower(int qubit) {  // qubit 0 = a (high bit), 1 = b
    M4 r{};
    for (int s = 0; s < 4; ++s) {
        const int bit = qubit == 0 ? 2 : 1;
        if (s & bit) r[s & ~bit][s] = 1.0;
    }
    return r;
}

M4 oracle_rhs(const M4& rho, double lambda_ratio, double g, double gnr, double bare_detuning, double coupling) {
    const double phi = 2.0 * M_PI / lambda_ratio;
    const double ga = g * (1 + std::cos(phi)) + gnr;
    const double gb = g * (1 + std::cos(3 * phi)) + gnr;
    const double gc = g * (std::cos(phi) + std::cos(2 * phi));
    const double gx = g * (std::sin(phi) + std::sin(2 * phi)) / 2;
    const double da = g / 2 * std::sin(phi) + bare_detuning / 2;
    const double db = g / 2 * std::sin(3 * phi) - bare_detuning / 2;

    M4 h{};
    for (int s = 0; s < 4; ++s) {
        const double za = (s & 2) ? -1.0 : 1.0;
        const double zb = (s & 1) ? -1.0 : 1.0;
        h[s][s] = 0.5 * da * za + 0.5 * db * zb;
    }
    h[1][2] = h[2][1] = gx + coupling;  // |01> <-> |10>

    const M4 sa = lower(0), sb = lower(1);
    const cplx i{0, 1};
    M4 out{};
    const M4 hr = mul(h, rho), rh = mul(rho, h);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = -i * (hr[r][c] - rh[r][c]);

    auto add = [&](double rate, const M4& a, const M4& b) {
        const M4 arb = mul(mul(a, rho), dag(b));
        const M4 bda = mul(dag(b), a);
        const M4 left = mul(bda, rho), right = mul(rho, bda);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) out[r][c] += rate * (arb[r][c] - 0.5 * (left[r][c] + right[r][c]));
    };
    add(ga, sa, sa);
    add(gb, sb, sb);
    add(gc, sa, sb);
    add(gc, sb, sa);
    return out;
}

WaveguideParams params(double lr) {
    WaveguideParams p;
    p.lambda_ratio = lr;
    return p;
}

}  // namespace

TEST(DeriveRates, QuotedValuesAtFourRatios) {
    struct Row {
        double lr, ga, gb, gc, gx;
    };
    const Row rows[] = {{2.0, 0.03, 0.03, 0.0, 0.0},
                        {1.5, 2.53, 10.03, -5.0, 0.0},
                        {1.2, 7.53, 0.03, 0.0, -4.33},
                        {1.3, 5.63, 3.26, -4.25, -3.08}};
    for (const auto& row : rows) {
        const auto r = derive_rates(params(row.lr));
        EXPECT_NEAR(to_mhz(r.gamma_a), row.ga, 0.01) << row.lr;
        EXPECT_NEAR(to_mhz(r.gamma_b), row.gb, 0.01) << row.lr;
        EXPECT_NEAR(to_mhz(r.gamma_col), row.gc, 0.01) << row.lr;
        EXPECT_NEAR(to_mhz(r.g_x), row.gx, 0.01) << row.lr;
    }
}

TEST(DeriveRates, VanishAtHalfWavelengthWithoutIntrinsicLoss) {
    WaveguideParams p = params(2.0);
    p.gamma_nr = 0.0;
    const auto r = derive_rates(p);
    const double eps = 1e-14 * p.gamma;
    EXPECT_NEAR(r.gamma_a, 0.0, eps);
    EXPECT_NEAR(r.gamma_b, 0.0, eps);
    EXPECT_NEAR(r.gamma_col, 0.0, eps);
    EXPECT_NEAR(r.g_x, 0.0, eps);
    EXPECT_NEAR(r.shift_a, 0.0, eps);
    EXPECT_NEAR(r.shift_b, 0.0, eps);
}

TEST(DeriveRates, PeriodicInPhase) {
    Rng rng(21);
    for (int k = 0; k < 100; ++k) {
        const double phi = wgqed::testing::uniform(rng, 0.3, 2.0 * M_PI - 0.3);
        const auto r1 = derive_rates(params(kTwoPi / phi));
        const auto r2 = derive_rates(params(kTwoPi / (phi + kTwoPi)));
        const double tol = 1e-12 * from_mhz(5.0);
        EXPECT_NEAR(r1.gamma_a, r2.gamma_a, tol);
        EXPECT_NEAR(r1.gamma_b, r2.gamma_b, tol);
        EXPECT_NEAR(r1.gamma_col, r2.gamma_col, tol);
        EXPECT_NEAR(r1.g_x, r2.g_x, tol);
        EXPECT_NEAR(r1.shift_a, r2.shift_a, tol);
        EXPECT_NEAR(r1.shift_b, r2.shift_b, tol);
    }
}

TEST(DeriveRates, DissipationMatrixPositive) {
    for (double lr = 1.0; lr <= 3.0; lr += 0.01) {
        const auto r = derive_rates(params(lr));
        EXPECT_GE(dissipation_min_eigenvalue(r), from_mhz(0.03) - 1e-9) << lr;
    }
    WaveguideParams p = params(1.37);
    p.gamma_nr = 0.0;
    EXPECT_NEAR(dissipation_min_eigenvalue(derive_rates(p)), 0.0, 1e-12);
}

TEST(DeriveRates, RejectsBadParameters) {
    EXPECT_THROW(derive_rates(params(0.0)), invalid_input);
    EXPECT_THROW(derive_rates(params(-1.0)), invalid_input);
    WaveguideParams p;
    p.gamma = -1.0;
    EXPECT_THROW(derive_rates(p), invalid_input);
    p = {};
    p.gamma_nr = -0.1;
    EXPECT_THROW(derive_rates(p), invalid_input);
}

TEST(Generator, MatchesBruteForceOracle) {
    Rng rng(22);
    for (double lr : {2.0, 1.5, 1.2, 1.3, 2.71}) {
        WaveguideParams p = params(lr);
        p.detuning = from_mhz(wgqed::testing::uniform(rng, -3.0, 3.0));
        p.coupling = from_mhz(wgqed::testing::uniform(rng, -2.0, 2.0));
        const auto gen = build_generator(derive_rates(p), p);
        for (int k = 0; k < 10; ++k) {
            const auto rho = wgqed::testing::random_density<4>(rng);
            M4 r{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) r[i][j] = rho(i, j);
            const M4 want = oracle_rhs(r, lr, p.gamma, p.gamma_nr, p.detuning, p.coupling);
            const auto got = apply_superoperator<4>(gen, rho);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(got(i, j) - want[i][j]), 0.0, 1e-12);
        }
    }
}

TEST(Generator, TraceAnnihilatingAndHermiticityPreserving) {
    Rng rng(23);
    for (double lr : {2.0, 1.5, 1.2, 1.3}) {
        const WaveguideParams p = params(lr);
        const auto gen = build_generator(derive_rates(p), p);
        for (int k = 0; k < 50; ++k) {
            const auto m = wgqed::testing::random_matrix<4>(rng);
            EXPECT_LE(std::abs(apply_superoperator<4>(gen, m).trace()), 1e-12 * gen.max_abs());
            const auto h = wgqed::testing::random_hermitian<4>(rng);
            const auto out = apply_superoperator<4>(gen, h);
            EXPECT_LE(max_abs_diff(out.adjoint(), apply_superoperator<4>(gen, Matrix<4>(h.adjoint()))), 1e-12 * gen.max_abs());
        }
    }
}

TEST(Generator, SuperoperatorAgreesWithDirectApplication) {
    Rng rng(24);
    const WaveguideParams p = params(1.3);
    const auto r = derive_rates(p);
    const auto eq = build_master_equation(r, p);
    const auto gen = build_generator(r, p);
    for (int k = 0; k < 20; ++k) {
        const auto m = wgqed::testing::random_matrix<4>(rng);
        EXPECT_LE(max_abs_diff(eq.apply(m), apply_superoperator<4>(gen, m)), 1e-12);
    }
}

TEST(Units, MhzRoundTrip) {
    EXPECT_DOUBLE_EQ(from_mhz(1.0), 2.0 * M_PI);
    EXPECT_DOUBLE_EQ(to_mhz(from_mhz(5.0)), 5.0);
}
