#include "discorr/analytic.hpp"

#include "discorr/states.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace discorr;

namespace {

std::vector<cplx> amps_of(const PureSingleModeState& s) {
    return {s.amps().begin(), s.amps().end()};
}

// Constructs a partner vector satisfying the separable zero-diagonal
// criterion: both parity chains of c_a rescaled independently.
std::vector<cplx> criterion_partner(const std::vector<cplx>& c_a, cplx even_scale,
                                    cplx odd_scale) {
    std::vector<cplx> c_b(c_a.size());
    for (size_t n = 0; n < c_a.size(); ++n)
        c_b[n] = (n % 2 == 0 ? even_scale : odd_scale) * c_a[n];
    return c_b;
}

} // namespace

TEST_CASE("displaced-photon coefficients vanish on the diagonal and match by hand at (1,0)") {
    const cplx alpha = std::polar(1.9, 0.7);
    for (int n = 0; n < 12; ++n) CHECK(displaced_photon_coeff(n, n, alpha) == cplx(0.0, 0.0));

    const double mag = std::abs(alpha);
    const cplx expected = std::exp(-0.5 * mag * mag) / std::sqrt(2.0);
    CHECK(std::abs(displaced_photon_coeff(1, 0, alpha) - expected) < 1e-14);
    CHECK(std::abs(displaced_photon_coeff(0, 1, alpha) + expected) < 1e-14);
}

TEST_CASE("displaced-photon grid is normalized up to the truncation tail") {
    const cplx alpha = std::sqrt(8.0);
    const auto grid = displaced_photon_grid(alpha, 40, 40);
    CHECK(grid.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("heralded coefficients vanish identically for vacuum inputs") {
    std::vector<cplx> vac(10, 0.0);
    vac[0] = 1.0;
    const BeamSplitterParams bs(0.6);
    for (int n = 0; n < 12; ++n)
        for (int m = 0; m < 12; ++m) CHECK(heralded_coeff(vac, vac, bs, n, m) == cplx(0.0, 0.0));
    CHECK(herald_probability(vac, vac, bs, 12) == 0.0);
}

TEST_CASE("equal coherent inputs produce an exactly zero diagonal") {
    const auto c = amps_of(coherent(CoherentAmplitude(1.4, 0.3), 20).state);
    const BeamSplitterParams bs(0.5);
    for (int n = 0; n < 20; ++n) CHECK(std::abs(heralded_coeff(c, c, bs, n, n)) < 1e-18);
}

TEST_CASE("herald probability is a probability and vanishes only without photons") {
    testutil::Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = rng.state_vector(12);
        const auto b = rng.state_vector(12);
        const double p = herald_probability(a, b, BeamSplitterParams(rng.uniform(0.2, 0.9)), 14);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-12);
    }
}

TEST_CASE("diagonal_coeff is the factored heralded_coeff at n = m") {
    testutil::Rng rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = rng.state_vector(10);
        const auto b = rng.state_vector(10);
        const BeamSplitterParams bs(rng.uniform(0.15, 0.95));
        for (int n = 0; n < 11; ++n)
            CHECK(std::abs(diagonal_coeff(a, b, bs, n) - heralded_coeff(a, b, bs, n, n)) <
                  1e-14);
    }
}

TEST_CASE("transmissivity sqrt(2/(n+1)) filters the n-photon diagonal term for any inputs") {
    testutil::Rng rng(71);
    for (int n : {2, 3, 5}) {
        const BeamSplitterParams bs(std::sqrt(2.0 / (n + 1)));
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = rng.state_vector(10);
            const auto b = rng.state_vector(10);
            CHECK(std::abs(diagonal_coeff(a, b, bs, n)) < 1e-12);
        }
    }
}

TEST_CASE("matched squeezed-vacuum inputs satisfy the zero-diagonal criterion") {
    const auto s = amps_of(smsv(SqueezingParameter(cplx(0.4, 0.25)), 16).state);
    const BeamSplitterParams bs(0.62);
    CHECK(check_discorrelation_condition(s, s, 14).max_violation == 0.0);
    for (int n = 0; n < 16; ++n) CHECK(std::abs(diagonal_coeff(s, s, bs, n)) < 1e-18);
}

TEST_CASE("the separable criterion distinguishes matched from mismatched coherent pairs") {
    const auto a = amps_of(coherent(CoherentAmplitude(std::sqrt(8.0)), 30).state);
    const auto b_same = amps_of(coherent(CoherentAmplitude(std::sqrt(8.0)), 30).state);
    // Same magnitude, pi relative phase: amplitudes squared still agree.
    const auto b_pi =
        amps_of(coherent(CoherentAmplitude(std::sqrt(8.0), std::numbers::pi), 30).state);
    // The quarter-turn phase breaks the condition.
    const auto b_quarter =
        amps_of(coherent(CoherentAmplitude(std::sqrt(8.0), std::numbers::pi / 2), 30).state);

    CHECK(check_discorrelation_condition(a, b_same, 28).max_violation < 1e-14);
    CHECK(check_discorrelation_condition(a, b_pi, 28).max_violation < 1e-14);
    CHECK(check_discorrelation_condition(a, b_quarter, 28).max_violation > 1e-3);
}

TEST_CASE("criterion zero exactly characterizes a zero output diagonal") {
    testutil::Rng rng(73);
    const BeamSplitterParams bs(0.57);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = rng.uniform_int(6, 12);
        const auto a = rng.state_vector(dim);
        const bool matched = trial % 2 == 0;
        std::vector<cplx> b;
        if (matched) {
            b = criterion_partner(a, rng.unit_complex(), rng.unit_complex());
        } else {
            b = rng.state_vector(dim);
        }
        const double violation = check_discorrelation_condition(a, b, dim - 2).max_violation;
        double diag = 0.0;
        for (int n = 0; n < dim - 1; ++n) diag += std::norm(diagonal_coeff(a, b, bs, n));
        const double total = herald_probability(a, b, bs, dim + 2);
        if (matched) {
            CHECK(violation < 1e-12);
            CHECK(diag / total < 1e-12);
        } else {
            CHECK(violation > 1e-6);
            CHECK(diag / total > 1e-12);
        }
    }
}

TEST_CASE("coherent_output_coeff equals heralded_coeff with equal coherent inputs") {
    const cplx alpha = std::sqrt(8.0);
    const auto c = amps_of(coherent(CoherentAmplitude(std::sqrt(8.0)), 34).state);
    const BeamSplitterParams bs(std::sqrt(2.0 / 30.0));
    double worst = 0.0;
    for (int n = 0; n < 30; ++n)
        for (int m = 0; m < 30; ++m)
            worst = std::max(worst, std::abs(coherent_output_coeff(n, m, alpha, bs) -
                                             heralded_coeff(c, c, bs, n, m)));
    // The closed form uses the ideal coherent amplitudes; the vector is the
    // dim-34 truncation, so agreement is bounded by that tail.
    CHECK(worst < 1e-12);
}

TEST_CASE("coherent_output_coeff kills the n+m = 2/t^2 - 1 shell") {
    const cplx alpha = std::sqrt(8.0);
    const BeamSplitterParams bs(std::sqrt(2.0 / 15.0));  // 2/t^2 - 1 = 14
    for (int n = 0; n <= 14; ++n)
        CHECK(std::abs(coherent_output_coeff(n, 14 - n, alpha, bs)) < 1e-16);
    CHECK(std::abs(coherent_output_coeff(8, 5, alpha, bs)) > 0.0);
}

TEST_CASE("entangled-input coefficients: two-mode squeezed input lands on the offset stripes") {
    const auto in = tmsv(SqueezingParameter(0.5), 12).state;
    const BeamSplitterParams bs(0.55);
    for (int n = 0; n < 14; ++n)
        for (int m = 0; m < 14; ++m) {
            const cplx v = entangled_output_coeff(in, bs, n, m);
            if (std::abs(n - m) != 2) CHECK(std::abs(v) == 0.0);
        }
    CHECK(std::abs(entangled_output_coeff(in, bs, 2, 0)) > 0.0);
}

TEST_CASE("entangled-input formula needs r > 0") {
    const auto in = tmsv(SqueezingParameter(0.5), 8).state;
    CHECK_THROWS_AS(entangled_output_coeff(in, BeamSplitterParams(1.0), 1, 1),
                    DegenerateBeamSplitterError);
}

TEST_CASE("entangled criterion: symmetric grids pass, a constructed counterexample fails") {
    const auto in = tmsv(SqueezingParameter(0.7), 10).state;
    CHECK(check_entangled_condition(in, 8).max_violation == 0.0);

    const auto a = coherent(CoherentAmplitude(1.1), 12).state;
    const auto product = tensor_product(a, a);
    CHECK(check_entangled_condition(product, 10).max_violation < 1e-14);

    std::vector<cplx> counter(16, 0.0);
    counter[0 * 4 + 2] = 1.0;  // c(0,2) = 1, c(2,0) = 0
    CHECK(check_entangled_condition(PureTwoModeState(4, 4, counter), 2).max_violation ==
          doctest::Approx(1.0));
}

TEST_CASE("entangled criterion zero exactly characterizes the output diagonal") {
    testutil::Rng rng(79);
    const BeamSplitterParams bs(0.48);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = rng.uniform_int(5, 9);
        auto grid = rng.two_mode(dim, dim);
        std::vector<cplx> c(grid.coeffs().begin(), grid.coeffs().end());
        const bool matched = trial % 2 == 0;
        if (matched) {
            // Symmetrize only the stripe the criterion reads.
            for (int n = 1; n < dim - 1; ++n)
                c[static_cast<size_t>(n + 1) * dim + (n - 1)] =
                    c[static_cast<size_t>(n - 1) * dim + (n + 1)];
        }
        const PureTwoModeState in(dim, dim, std::move(c));
        const double violation = check_entangled_condition(in, dim - 2).max_violation;
        double diag = 0.0, total = 0.0;
        for (int n = 0; n < dim + 1; ++n)
            for (int m = 0; m < dim + 1; ++m) {
                const double w = std::norm(entangled_output_coeff(in, bs, n, m));
                total += w;
                if (n == m) diag += w;
            }
        if (matched) {
            CHECK(violation < 1e-12);
            CHECK(diag / total < 1e-12);
        } else {
            CHECK(violation > 1e-6);
            CHECK(diag / total > 1e-12);
        }
    }
}

TEST_CASE("swapping the two inputs flips the grid with an alternating sign") {
    testutil::Rng rng(83);
    const BeamSplitterParams bs(0.71);
    const auto a = rng.state_vector(9);
    const auto b = rng.state_vector(9);
    for (int n = 0; n < 10; ++n)
        for (int m = 0; m < 10; ++m) {
            const cplx swapped = heralded_coeff(b, a, bs, m, n);
            const double sign = ((n + m) % 2 == 0) ? -1.0 : 1.0;
            CHECK(std::abs(swapped - sign * heralded_coeff(a, b, bs, n, m)) < 1e-14);
        }
}

TEST_CASE("phase alignment quotients a global phase before comparing") {
    testutil::Rng rng(89);
    const auto g = rng.two_mode(6, 6);
    std::vector<cplx> rotated(g.coeffs().begin(), g.coeffs().end());
    const cplx phase = std::polar(1.0, 1.234);
    for (auto& v : rotated) v *= phase;
    CHECK(phase_aligned_max_diff(g, PureTwoModeState(6, 6, std::move(rotated))) < 1e-14);
}
