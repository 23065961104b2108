#include "discorr/states.hpp"

#include "discorr/analysis.hpp"
#include "discorr/optics.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace discorr;

TEST_CASE("fock states are unit basis vectors with sharp photon number") {
    const auto vac = fock(0, 6);
    CHECK(vac.amp(0) == cplx(1.0, 0.0));
    CHECK(vac.mean_photon_number() == 0.0);

    const auto one = fock(1, 6);
    CHECK(one.mean_photon_number() == doctest::Approx(1.0));

    const auto two = fock(2, 6);
    CHECK(two.mean_photon_number() == doctest::Approx(2.0));
    double second_moment = 0.0;
    for (int n = 0; n < 6; ++n) second_moment += n * n * std::norm(two.amp(n));
    CHECK(second_moment - 4.0 == doctest::Approx(0.0));  // variance 0

    CHECK_THROWS_AS(fock(6, 6), OutOfRangeError);
    CHECK_THROWS_AS(fock(-1, 6), OutOfRangeError);
}

TEST_CASE("coherent(0) is vacuum and coherent(sqrt 8) has mean 8") {
    const auto vac = coherent(CoherentAmplitude(0.0), 8).state;
    CHECK(std::abs(vac.amp(0) - cplx(1.0, 0.0)) < 1e-15);

    const auto big = coherent(CoherentAmplitude(std::sqrt(8.0)), 40).state;
    CHECK(big.mean_photon_number() == doctest::Approx(8.0).epsilon(1e-6));
}

TEST_CASE("coherent amplitude ratios follow a^n/sqrt(n!)") {
    const auto s = coherent(CoherentAmplitude(1.0), 20).state;
    CHECK(std::abs(s.amp(1) / s.amp(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s.amp(2) / s.amp(0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("coherent photon statistics are Poisson up to the recorded tail") {
    const double mag = 1.7;
    auto [state, discarded] = coherent(CoherentAmplitude(mag, 0.8), 24);
    const double mu = mag * mag;
    for (int n = 0; n < 24; n += 4)
        CHECK(std::norm(state.amp(n)) == doctest::Approx(poisson_pmf(mu, n)).epsilon(1e-9));
    CHECK(discarded == doctest::Approx(testutil::poisson_tail(mu, 24)).epsilon(1e-9));
}

TEST_CASE("coherent rejects truncations that cut too much") {
    CHECK_THROWS_AS(coherent(CoherentAmplitude(std::sqrt(8.0)), 12), TailTooLargeError);
    CHECK_NOTHROW(coherent(CoherentAmplitude(std::sqrt(8.0)), 12, 1.0));
    // The scenario rule of thumb: dim 30 is enough for alpha = sqrt(8).
    CHECK_NOTHROW(coherent(CoherentAmplitude(std::sqrt(8.0)), 30));
}

TEST_CASE("smsv(0) is vacuum and smsv has even-only support") {
    const auto vac = smsv(SqueezingParameter(0.0), 8).state;
    CHECK(std::abs(vac.amp(0) - cplx(1.0, 0.0)) < 1e-15);

    const auto s = smsv(SqueezingParameter(0.5), 12).state;
    CHECK(s.amp(1) == cplx(0.0, 0.0));
    CHECK(s.amp(3) == cplx(0.0, 0.0));
    CHECK(s.amp(5) == cplx(0.0, 0.0));
    CHECK(std::abs(s.amp(2)) > 0.0);
}

TEST_CASE("smsv matches the squeeze-operator exponential") {
    // Our lambda is e^{i theta} tanh(r); the generator convention below maps
    // to it with a sign flip of lambda.
    const double lam = 0.5;
    const auto s = smsv(SqueezingParameter(lam), 24).state;
    const cplx ratio = s.amp(2) / s.amp(0);
    CHECK(ratio.real() == doctest::Approx(lam / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(ratio.imag()) < 1e-14);

    // The exponential is evaluated in a larger space (its own cutoff distorts
    // the top levels) and its compared block renormalized like the state's.
    const double r = std::atanh(lam);
    const auto expm = testutil::renormalized_block(testutil::squeezed_vacuum_expm(-r, 48), 24);
    for (int n = 0; n < 24; ++n) {
        CHECK(std::abs(s.amp(n).real() - expm[static_cast<size_t>(n)].real()) < 1e-11);
        CHECK(std::abs(s.amp(n).imag() - expm[static_cast<size_t>(n)].imag()) < 1e-12);
    }
}

TEST_CASE("smsv with complex lambda matches the exponential oracle too") {
    const cplx lam = std::polar(0.45, 1.1);
    const auto s = smsv(SqueezingParameter(lam), 20).state;
    const cplx z = -std::atanh(std::abs(lam)) * std::polar(1.0, std::arg(lam));
    const auto expm = testutil::renormalized_block(testutil::squeezed_vacuum_expm(z, 44), 20);
    for (int n = 0; n < 20; ++n)
        CHECK(std::abs(s.amp(n) - expm[static_cast<size_t>(n)]) < 1e-10);
}

TEST_CASE("tmsv(0) is double vacuum and tmsv is perfectly number-correlated") {
    const auto vac = tmsv(SqueezingParameter(0.0), 6).state;
    CHECK(std::abs(vac.coeff(0, 0) - cplx(1.0, 0.0)) < 1e-15);

    const auto s = tmsv(SqueezingParameter(0.62), 12).state;
    for (int n = 0; n < 12; ++n)
        for (int m = 0; m < 12; ++m)
            if (n != m) CHECK(s.coeff(n, m) == cplx(0.0, 0.0));
    CHECK(joint_distribution(s).same_count_prob == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tmsv(1/3) carries exactly one unit of log-negativity") {
    const auto s = tmsv(SqueezingParameter(1.0 / 3.0), 20).state;
    CHECK(logarithmic_negativity(s) == doctest::Approx(1.0).epsilon(1e-6));

    // Closed form of the trace norm: (1+|lambda|)/(1-|lambda|). The residual
    // is set by the lambda^dim truncation tail.
    for (double lam : {0.2, 1.0 / 3.0, 0.5}) {
        const auto st = tmsv(SqueezingParameter(lam), 24).state;
        CHECK(logarithmic_negativity(st) ==
              doctest::Approx(std::log2((1.0 + lam) / (1.0 - lam))).epsilon(1e-6));
    }
}

TEST_CASE("the squeezing parameter domain is guarded") {
    CHECK_THROWS_AS(SqueezingParameter(cplx(1.2, 0.0)), OutOfRangeError);
    CHECK_THROWS_AS(SqueezingParameter(cplx(1.0, 0.0)), OutOfRangeError);
    CHECK_NOTHROW(SqueezingParameter(cplx(1.0, 0.0), /*edge=*/true));
    // Edge states truncate-and-renormalize.
    const auto s = smsv(SqueezingParameter(cplx(-1.0, 0.0), true), 16).state;
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    const auto t = tmsv(SqueezingParameter(cplx(1.0, 0.0), true), 16).state;
    CHECK(t.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hom_state has the two-photon bunched distribution") {
    const auto hom = hom_state(5);
    const auto jd = joint_distribution(hom);
    CHECK(jd.p(2, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(jd.p(0, 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(jd.p(1, 1) == 0.0);
    CHECK(jd.same_count_prob == 0.0);
}

TEST_CASE("hom_state equals two photons interfering on a balanced splitter") {
    const auto interfered =
        beam_splitter(tensor_product(fock(1, 5), fock(1, 5)), BeamSplitterParams::balanced());
    const auto hom = hom_state(5);
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 5; ++m)
            CHECK(std::abs(interfered.coeff(n, m) - hom.coeff(n, m)) < 1e-10);
}

TEST_CASE("all constructors return unit-norm states") {
    CHECK(coherent(CoherentAmplitude(1.4, 2.0), 24).state.norm_sq() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(smsv(SqueezingParameter(cplx(0.3, 0.4)), 18).state.norm_sq() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tmsv(SqueezingParameter(0.7), 18).state.norm_sq() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hom_state(4).norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("coherent amplitude phases are stored reduced") {
    const CoherentAmplitude a(1.0, -1.0);
    CHECK(a.phase() >= 0.0);
    CHECK(a.phase() < 2.0 * std::numbers::pi);
    CHECK(std::abs(a.value() - std::polar(1.0, -1.0)) < 1e-14);
}
