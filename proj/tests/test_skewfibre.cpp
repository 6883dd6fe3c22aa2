#include <doctest.h>

#include <random>

#include "rotnum/skewfibre.hpp"
#include "support/oracles.hpp"

using namespace rotnum;
using circle::CircleMapLift;
using skewfibre::FiniteFibreSystem;

namespace {

FiniteFibreSystem rigid_system(std::vector<double> betas) {
    FiniteFibreSystem sys;
    for (double b : betas) sys.lifts.push_back(CircleMapLift::rigid(b));
    return sys;
}

const std::vector<oracle::Sine> sine_params{{0.1, 0.5, 1}, {0.25, 0.4, 2}, {0.4, 0.3, 3}};

FiniteFibreSystem sine_system() {
    FiniteFibreSystem sys;
    for (const auto& s : sine_params) sys.lifts.push_back(CircleMapLift::sine_family(s.beta, s.epsilon, s.k));
    return sys;
}

}  // namespace

TEST_CASE("step_psi") {
    CHECK(skewfibre::step_psi(rigid_system({0.1, 0.2, 0.3}), 0, 0.0, 3) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(skewfibre::step_psi(sine_system(), 2, 0.4, 0) == 0.0);

    const double frozen = 12.694314515098695;
    CHECK(oracle::psi(sine_params, 1, 0.7, 50) == doctest::Approx(frozen).epsilon(1e-13));
    CHECK(skewfibre::step_psi(sine_system(), 1, 0.7, 50) == doctest::Approx(frozen).epsilon(1e-12));

    CHECK_THROWS_AS(skewfibre::step_psi(sine_system(), 3, 0.0, 1), ValidationError);
    CHECK_THROWS_AS(skewfibre::step_psi(sine_system(), -1, 0.0, 1), ValidationError);
}

TEST_CASE("check_step_lemma") {
    auto rigid = skewfibre::check_step_lemma(rigid_system({0.1, 0.7, 0.35}), 2000);
    CHECK(rigid.passed());
    CHECK(rigid.worst_spread <= 1e-12);

    auto sine = skewfibre::check_step_lemma(sine_system(), 10000, 99);
    CHECK(sine.passed());
    CHECK(sine.worst_spread <= 1.0 + 1e-9);

    FiniteFibreSystem single;
    single.lifts.push_back(CircleMapLift::sine_family(0.3, 0.9, 1));
    CHECK(skewfibre::check_step_lemma(single, 2000).passed());
}

TEST_CASE("rho_ff") {
    CHECK(skewfibre::rho_ff(rigid_system({0.1, 0.2, 0.3}), 1000).value == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(skewfibre::rho_ff(rigid_system({0.375}), 1000).value == doctest::Approx(0.375).epsilon(1e-14));

    const auto sys = sine_system();
    const auto composite = skewfibre::rho_ff(sys, 1'000'000);
    const auto psi_route = skewfibre::rho_ff_psi(sys, 3'000'000);
    CHECK(overlaps(composite, psi_route));
    CHECK(psi_route.iterations == 3'000'000);

    // Independence of the starting fibre and point.
    for (int i = 0; i < 3; ++i) {
        CHECK(overlaps(composite, skewfibre::rho_ff(sys, 200'000, i, 0.37 * i)));
    }

    // Adding p to one lift shifts n rho_ff by exactly p.
    auto shifted = sys;
    shifted.lifts[1] = circle::shifted(shifted.lifts[1], 2);
    const auto a = skewfibre::rho_ff(sys, 5000);
    const auto b = skewfibre::rho_ff(shifted, 5000);
    CHECK(3 * (b.value - a.value) == doctest::Approx(2.0).epsilon(1e-10));

    CHECK_THROWS_AS(skewfibre::rho_ff(FiniteFibreSystem{}, 10), ValidationError);
    FiniteFibreSystem bad;
    bad.lifts.push_back(CircleMapLift::sine_family(0.1, 1.2, 1));
    CHECK_THROWS_AS(skewfibre::rho_ff(bad, 10), ValidationError);
}

TEST_CASE("power_rho_check") {
    auto rigid = skewfibre::power_rho_check(rigid_system({0.1, 0.2, 0.3}), 2, 1000);
    CHECK(rigid.passed);
    CHECK(rigid.power.value == doctest::Approx(0.4).epsilon(1e-13));

    CHECK(skewfibre::power_rho_check(sine_system(), 1, 10000).passed);
    auto three = skewfibre::power_rho_check(sine_system(), 3, 100000);
    CHECK(three.passed);
    CHECK(three.difference <= three.tolerance);

    // gcd(m, n) > 1 still yields m rho_ff.
    FiniteFibreSystem four = sine_system();
    four.lifts.push_back(CircleMapLift::sine_family(0.05, 0.6, 1));
    CHECK(skewfibre::power_rho_check(four, 2, 50000).passed);
    CHECK(skewfibre::power_system(four, 6).n() == 4);
}

TEST_CASE("conjugate_system") {
    const auto sys = sine_system();
    std::vector<CircleMapLift> id(3, CircleMapLift::piecewise_linear({{0.0, 0.0}, {1.0, 1.0}}));
    const auto same = skewfibre::conjugate_system(sys, id);
    for (double x : {0.0, 0.3, 1.7}) {
        for (int i = 0; i < 3; ++i) CHECK(same.lift(i)(x) == doctest::Approx(sys.lift(i)(x)).epsilon(1e-15));
    }

    // Rigid shifts telescope.
    const auto rigid = rigid_system({0.1, 0.2, 0.3});
    std::vector<CircleMapLift> shifts;
    for (double c : {0.15, 0.6, 0.9}) shifts.push_back(CircleMapLift::piecewise_linear({{0.0, c}, {1.0, c + 1.0}}));
    CHECK(skewfibre::rho_ff(skewfibre::conjugate_system(rigid, shifts), 1000).value ==
          doctest::Approx(0.2).epsilon(1e-12));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CircleMapLift> h;
        for (int i = 0; i < 3; ++i) h.push_back(circle::random_pl_homeo(rng, 4));
        const auto conj = skewfibre::conjugate_system(sys, h);
        CHECK(overlaps(skewfibre::rho_ff(sys, 50000), skewfibre::rho_ff(conj, 50000)));
    }

    CHECK_THROWS_AS(skewfibre::conjugate_system(sys, {id[0]}), ValidationError);
    std::vector<CircleMapLift> not_pl(3, CircleMapLift::rigid(0.1));
    CHECK_THROWS_AS(skewfibre::conjugate_system(sys, not_pl), ValidationError);
    std::vector<CircleMapLift> unnormalized(3, CircleMapLift::piecewise_linear({{0.0, 1.5}, {1.0, 2.5}}));
    CHECK_THROWS_AS(skewfibre::conjugate_system(sys, unnormalized), ValidationError);
    std::vector<CircleMapLift> folded(3, CircleMapLift::piecewise_linear({{0.0, 0.2}, {0.5, 0.1}, {1.0, 1.2}}));
    CHECK_THROWS_AS(skewfibre::conjugate_system(sys, folded), ValidationError);
}

#include "support/subadditivity.hpp"

TEST_CASE("sub-additivity with the proof constant") {
    auto rep = support::check_subadditivity(sine_system(), 2000, 11);
    CHECK(rep.violations == 0);
    CHECK(rep.constant >= 2.0);
    auto rigid = support::check_subadditivity(rigid_system({0.3, 0.9}), 500, 12);
    CHECK(rigid.violations == 0);
    CHECK(rigid.constant == doctest::Approx(2.6));
}
