#include <catch2/catch_amalgamated.hpp>

#include "qsteer/ensembles.hpp"
#include "qsteer/entanglement.hpp"

using namespace qsteer;
using Catch::Matchers::WithinAbs;

TEST_CASE("concurrence basics") {
    REQUIRE_THAT(concurrence(density_from_pure(PureState::bell())), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(concurrence(density_from_pure(PureState::basis(2, 0))), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(concurrence(DensityMatrix::maximally_mixed(2)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("pure-state concurrence equals 2|ad - bc|") {
    EnsembleSpec spec{EnsembleKind::HaarPure, 2, 4, 1, 11};
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const PureState psi = sample_haar_pure(spec, i);
        const cplx a = psi.amplitude(0), b = psi.amplitude(1), c = psi.amplitude(2),
                   d = psi.amplitude(3);
        const double expected = 2.0 * std::abs(a * d - b * c);
        REQUIRE_THAT(concurrence(density_from_pure(psi)), WithinAbs(expected, 1e-10));
    }
}

TEST_CASE("concurrence is local-unitary invariant") {
    EnsembleSpec spec{EnsembleKind::GinibreMixed, 2, 3, 1, 12};
    SplitMix64 rng(13);
    for (std::uint64_t i = 0; i < 25; ++i) {
        const DensityMatrix rho = sample_ginibre_mixed(spec, i);
        const DensityMatrix rot =
            apply_unitary(rho, kron(haar_unitary(2, rng), haar_unitary(2, rng)));
        REQUIRE_THAT(concurrence(rho), WithinAbs(concurrence(rot), 1e-10));
    }
}

TEST_CASE("concurrence rejects a spectrum that is negative beyond roundoff") {
    CMat m(4);
    m(0, 0) = 1.5; m(1, 1) = -0.5; // full-rank indefinite, unit trace
    m(2, 2) = 0.3; m(3, 3) = -0.3;
    const DensityMatrix bad = DensityMatrix::unchecked(2, m);
    REQUIRE_THROWS_AS(concurrence(bad), NumericalIntegrityError);
}

TEST_CASE("bipartition concurrence squared") {
    REQUIRE_THAT(bipartition_concurrence_sq(PureState::ghz(), Qubit::A), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(bipartition_concurrence_sq(PureState::basis(3, 0), Qubit::A),
                 WithinAbs(0.0, 1e-12));

    // 4 det(rho_focus) = 2 (1 - tr rho_focus^2) on random states
    EnsembleSpec spec{EnsembleKind::HaarPure, 3, 8, 1, 14};
    for (std::uint64_t i = 0; i < 100; ++i) {
        const PureState psi = sample_haar_pure(spec, i);
        for (int q = 0; q < 3; ++q) {
            const Qubit focus = static_cast<Qubit>(q);
            const double csq = bipartition_concurrence_sq(psi, focus);
            const DensityMatrix rf = partial_trace(density_from_pure(psi), {focus});
            REQUIRE_THAT(csq, WithinAbs(2.0 * (1.0 - rf.purity()), 1e-12));
            REQUIRE(csq >= -1e-12);
            REQUIRE(csq <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("tangle on reference states") {
    SECTION("GHZ") {
        const TangleReport r = tangle(PureState::ghz());
        REQUIRE_THAT(r.tangle, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(r.c_sq_focus_rest, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(r.c_sq_pair1, WithinAbs(0.0, 1e-12));
    }
    SECTION("W state vanishes with the expected pieces") {
        const TangleReport r = tangle(PureState::w_state());
        REQUIRE_THAT(r.c_sq_focus_rest, WithinAbs(8.0 / 9.0, 1e-10));
        REQUIRE_THAT(r.c_sq_pair1, WithinAbs(4.0 / 9.0, 1e-10));
        REQUIRE_THAT(r.c_sq_pair2, WithinAbs(4.0 / 9.0, 1e-10));
        REQUIRE_THAT(r.tangle, WithinAbs(0.0, 1e-9));
    }
    SECTION("report is self-consistent") {
        const TangleReport r = tangle(PureState::ghz());
        REQUIRE_THAT(r.tangle, WithinAbs(r.c_sq_focus_rest - r.c_sq_pair1 - r.c_sq_pair2, 1e-12));
    }
}

TEST_CASE("tangle is focus-independent and monogamous") {
    EnsembleSpec spec{EnsembleKind::HaarPure, 3, 8, 1, 15};
    for (std::uint64_t i = 0; i < 300; ++i) {
        const PureState psi = sample_haar_pure(spec, i);
        const double ta = tangle(psi, Qubit::A).tangle;
        const double tb = tangle(psi, Qubit::B).tangle;
        const double tc = tangle(psi, Qubit::C).tangle;
        REQUIRE_THAT(ta, WithinAbs(tb, 1e-9));
        REQUIRE_THAT(ta, WithinAbs(tc, 1e-9));
        REQUIRE(ta >= 0.0);
        REQUIRE(ta <= 1.0 + 1e-9);

        const TangleReport r = tangle(psi);
        REQUIRE(r.c_sq_pair1 + r.c_sq_pair2 <= r.c_sq_focus_rest + 1e-9);
    }
}

TEST_CASE("tangle rejects mixed density input but accepts rank-1") {
    REQUIRE_THROWS_AS(tangle(DensityMatrix::maximally_mixed(3)), UnsupportedInputError);

    const PureState psi = PureState::ghz();
    const TangleReport r = tangle(density_from_pure(psi));
    REQUIRE_THAT(r.tangle, WithinAbs(1.0, 1e-10));
}
