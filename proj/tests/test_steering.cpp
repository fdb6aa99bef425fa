#include <catch2/catch_amalgamated.hpp>

#include "qsteer/ensembles.hpp"
#include "qsteer/steering.hpp"
#include "qsteer/tradeoff.hpp"

using namespace qsteer;
using Catch::Matchers::WithinAbs;

namespace {

DensityMatrix ghz_marginal_ab() {
    return partial_trace(density_from_pure(PureState::ghz()), {Qubit::A, Qubit::B});
}

DensityMatrix mdcc_pair(double m, Pair p) {
    const auto q = pair_qubits(p);
    return partial_trace(density_from_pure(mdcc_state(m)), {q[0], q[1]});
}

const Vec3 ex{1, 0, 0};
const Vec3 ey{0, 1, 0};
const Vec3 ez{0, 0, 1};

} // namespace

TEST_CASE("steering functional on fixed settings") {
    SECTION("Bell state with the xyz frame") {
        const auto mu = MeasurementSettings::checked(3, {ex, ey, ez}, {ex, ey, ez});
        REQUIRE_THAT(steering_functional(density_from_pure(PureState::bell()), mu),
                     WithinAbs(1.0 / std::sqrt(3.0), 1e-12));
    }
    SECTION("GHZ marginal, two settings (z, x)") {
        const auto mu = MeasurementSettings::checked(2, {ez, ex, ez}, {ez, ex, ey});
        REQUIRE_THAT(steering_functional(ghz_marginal_ab(), mu),
                     WithinAbs(1.0 / std::sqrt(2.0), 1e-12));
    }
    SECTION("u orthogonal to T v gives zero") {
        // GHZ marginal has T = diag(0,0,1); pick v = z so T v = z, then u = x.
        const auto mu = MeasurementSettings::checked(2, {ex, ey, ez}, {ez, ex, ey});
        REQUIRE_THAT(steering_functional(ghz_marginal_ab(), mu), WithinAbs(0.0, 1e-14));
    }
    SECTION("invalid settings are rejected") {
        REQUIRE_THROWS_AS(MeasurementSettings::checked(2, {Vec3{2, 0, 0}, ey, ez}, {ex, ey, ez}),
                          ArgumentError);
        REQUIRE_THROWS_AS(MeasurementSettings::checked(2, {ex, ey, ez}, {ex, ex, ez}),
                          ArgumentError);
        REQUIRE_THROWS_AS(MeasurementSettings::checked(4, {ex, ey, ez}, {ex, ey, ez}),
                          ArgumentError);
    }
}

TEST_CASE("closed-form maxima") {
    const DensityMatrix bell = density_from_pure(PureState::bell());
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);

    SECTION("two settings") {
        REQUIRE_THAT(f2_max_sq(bell), WithinAbs(2.0, 1e-12));
        REQUIRE_THAT(f2_max_sq(mixed), WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(f2_max_sq(ghz_marginal_ab()), WithinAbs(1.0, 1e-12));
    }
    SECTION("three settings, including the one-parameter family values") {
        REQUIRE_THAT(f3_max_sq(mixed), WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(f3_max_sq(mdcc_pair(0.0, Pair::AB)), WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(f3_max_sq(mdcc_pair(1.0, Pair::AC)), WithinAbs(3.0, 1e-12));
        const double m = 0.5, d = 1 + m * m;
        REQUIRE_THAT(f3_max_sq(mdcc_pair(m, Pair::AC)),
                     WithinAbs(1.0 + 8.0 * m * m / (d * d), 1e-12));
        REQUIRE_THAT(f3_max_sq(mdcc_pair(0.5, Pair::AC)), WithinAbs(2.28, 1e-12));
    }
    SECTION("Bell-CHSH maximum") {
        REQUIRE_THAT(bell_chsh_max(bell), WithinAbs(2.0 * std::sqrt(2.0), 1e-12));
        REQUIRE_THAT(bell_chsh_max(density_from_pure(PureState::bell())), WithinAbs(2.0 * std::sqrt(2.0), 1e-12));
        REQUIRE_THAT(bell_chsh_max(density_from_pure(
                         PureState::from_amplitudes(2, {cplx{1, 0}, {0, 0}, {0, 0}, {0, 0}}))),
                     WithinAbs(2.0, 1e-12));
        REQUIRE_THAT(bell_chsh_max(mixed), WithinAbs(0.0, 1e-15));
    }
    SECTION("violation report ties the pieces together") {
        const ViolationReport r = violation_report(bell);
        REQUIRE_THAT(r.f2_sq, WithinAbs(r.singulars[0] * r.singulars[0] +
                                            r.singulars[1] * r.singulars[1],
                                        1e-12));
        REQUIRE_THAT(r.f3_sq, WithinAbs(r.f2_sq + r.singulars[2] * r.singulars[2], 1e-12));
        REQUIRE_THAT(r.bell_max, WithinAbs(2.0 * std::sqrt(r.f2_sq), 1e-12));
        REQUIRE(r.f2_sq <= r.f3_sq);
        REQUIRE(r.f3_sq <= 3.0 + 1e-10);
    }
}

TEST_CASE("violation predicate is strict at the bound") {
    REQUIRE_FALSE(violates(1.0, 1.0));
    REQUIRE_FALSE(violates(1.0 + 5e-10, 1.0));
    REQUIRE(violates(1.0 + 1e-8, 1.0));
}

TEST_CASE("settings optimizer") {
    SECTION("Bell state, n=2") {
        const auto [mu, val] = optimize_settings(density_from_pure(PureState::bell()), 2, 20, 42);
        REQUIRE_THAT(val, WithinAbs(std::sqrt(2.0), 1e-4));
        REQUIRE(mu.n == 2);
    }
    SECTION("one-parameter family AC pair at m=0.5, n=3") {
        const auto [mu, val] = optimize_settings(mdcc_pair(0.5, Pair::AC), 3, 20, 43);
        REQUIRE_THAT(val, WithinAbs(std::sqrt(2.28), 1e-4));
    }
    SECTION("maximally mixed stays at zero") {
        const auto [mu, val] = optimize_settings(DensityMatrix::maximally_mixed(2), 3, 5, 44);
        REQUIRE_THAT(val, WithinAbs(0.0, 1e-6));
    }
    SECTION("deterministic per seed") {
        const DensityMatrix rho = sample_ginibre_mixed({EnsembleKind::GinibreMixed, 2, 4, 1, 7}, 0);
        const double a = optimize_settings(rho, 2, 5, 1234).value;
        const double b = optimize_settings(rho, 2, 5, 1234).value;
        REQUIRE(a == b);
    }
    SECTION("never exceeds the closed form") {
        EnsembleSpec spec{EnsembleKind::GinibreMixed, 2, 4, 1, 321};
        for (std::uint64_t i = 0; i < 25; ++i) {
            const DensityMatrix rho = sample_ginibre_mixed(spec, i);
            const double c2 = f2_max_sq(rho), c3 = f3_max_sq(rho);
            const double o2 = optimize_settings(rho, 2, 20, 9000 + i).value;
            const double o3 = optimize_settings(rho, 3, 20, 9100 + i).value;
            REQUIRE(o2 * o2 <= c2 + 1e-9);
            REQUIRE(o3 * o3 <= c3 + 1e-9);
            REQUIRE_THAT(o2 * o2, WithinAbs(c2, 1e-4));
            REQUIRE_THAT(o3 * o3, WithinAbs(c3, 1e-4));
        }
    }
}

TEST_CASE("steering maxima are local-unitary invariant") {
    EnsembleSpec spec{EnsembleKind::GinibreMixed, 2, 4, 1, 606};
    SplitMix64 rng(607);
    for (std::uint64_t i = 0; i < 20; ++i) {
        const DensityMatrix rho = sample_ginibre_mixed(spec, i);
        const DensityMatrix rot =
            apply_unitary(rho, kron(haar_unitary(2, rng), haar_unitary(2, rng)));
        REQUIRE_THAT(f2_max_sq(rho), WithinAbs(f2_max_sq(rot), 1e-10));
        REQUIRE_THAT(f3_max_sq(rho), WithinAbs(f3_max_sq(rot), 1e-10));
        REQUIRE_THAT(bell_chsh_max(rho), WithinAbs(bell_chsh_max(rot), 1e-10));
        REQUIRE(f2_max_sq(rho) <= f3_max_sq(rho) + 1e-15);
    }
}

TEST_CASE("functional never beats the 3-setting closed form") {
    EnsembleSpec spec{EnsembleKind::GinibreMixed, 2, 4, 1, 808};
    SplitMix64 rng(809);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const DensityMatrix rho = sample_ginibre_mixed(spec, i);
        const double bound = std::sqrt(f3_max_sq(rho));
        for (int rep = 0; rep < 20; ++rep) {
            std::array<Vec3, 3> u{}, v{};
            const Mat3 frame = random_frame(rng);
            for (int k = 0; k < 3; ++k) {
                u[static_cast<std::size_t>(k)] = random_unit_vec3(rng);
                v[static_cast<std::size_t>(k)] = Vec3{frame(0, k), frame(1, k), frame(2, k)};
            }
            const auto mu = MeasurementSettings::checked(3, u, v);
            REQUIRE(steering_functional(rho, mu) <= bound + 1e-10);
        }
    }
}
