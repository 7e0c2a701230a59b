#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "srp/oracle.hpp"
#include "srp/params.hpp"
#include "srp/scattering.hpp"

using namespace srp;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("validate accepts a plain record and derives accessors exactly") {
    ModelParams p{1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0};
    const ModelParams v = validate(p);
    CHECK(v.gamma_bar() == 0.5);
    CHECK(v.l_abs() == 0.5);
    CHECK(v.delta_r() == 1.0);
}

TEST_CASE("validate names every violated constraint") {
    ModelParams p{0.0, -1.0, 1.0, 0.0, 0.0, -2.0, 1.0};
    try {
        validate(p);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const auto& v = e.violations();
        REQUIRE(v.size() == 3);
        CHECK(v[0] == "NonPositive(gamma)");
        CHECK(v[1] == "NonPositive(big_g)");
        CHECK(v[2] == "NegativeRabi(omega_c)");
    }
}

TEST_CASE("rb87 preset ties big_g to the optical depth") {
    const Rb87Preset preset = rb87_preset();
    const ModelParams p = preset.to_params();
    CHECK(p.gamma == doctest::Approx(2.0 * kPi * 6.0e6).epsilon(1e-13));
    CHECK(preset.slab_length_um / p.l_abs() ==
          doctest::Approx(preset.optical_depth).epsilon(1e-13));
    const double g2 = preset.optical_depth * p.light_speed * p.gamma_bar() /
                      preset.slab_length_um;
    CHECK(p.big_g * p.big_g == doctest::Approx(g2).epsilon(1e-13));
}

TEST_CASE("to_dimensionless lands on gamma = 1, l_abs = 1 and is idempotent") {
    const ModelParams si = rb87_preset().to_params();
    const ModelParams c = to_dimensionless(si);
    CHECK(c.gamma == 1.0);
    CHECK(c.l_abs() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.omega_c == doctest::Approx(1.0).epsilon(1e-14));  // preset: 1 gamma
    CHECK(c.delta == doctest::Approx(c.omega_s).epsilon(1e-14));

    const ModelParams again = to_dimensionless(c);
    CHECK(again.omega_c == doctest::Approx(c.omega_c).epsilon(1e-15));
    CHECK(again.big_g == doctest::Approx(c.big_g).epsilon(1e-15));
    CHECK(again.light_speed == doctest::Approx(c.light_speed).epsilon(1e-15));

    // an SI frequency equal to gamma becomes exactly 1 in gamma units
    ModelParams q = si;
    q.omega_c = q.gamma;
    CHECK(to_dimensionless(q).omega_c == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("observables depend only on dimensionless ratios") {
    // frequencies x s, big_g x sqrt(s): l_abs and L/l_abs fixed.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> scale(0.25, 40.0);
    ModelParams base = fig2_params();
    base.omega_c = 0.8;
    base.omega_s = 1.3;
    base.delta = 1.3;

    MediumSpec med;
    med.length = 3.0;
    Impurity imp;
    imp.z0 = 1.2;
    imp.interaction.kind = InteractionModel::Kind::explicit_c6;
    imp.interaction.c6 = 0.004;
    med.impurity = imp;

    const ScatterResult ref = scatter(base, med);
    for (int i = 0; i < 5; ++i) {
        const double s = scale(rng);
        ModelParams p = base;
        p.gamma *= s;
        p.omega_c *= s;
        p.omega_s *= s;
        p.delta *= s;
        p.delta_s *= s;
        p.big_g *= std::sqrt(s);
        MediumSpec m = med;
        m.impurity->interaction.c6 *= s;  // V/gamma fixed at equal positions
        const ScatterResult r = scatter(p, m);
        CHECK(r.T == doctest::Approx(ref.T).epsilon(1e-12));
        CHECK(r.R == doctest::Approx(ref.R).epsilon(1e-12));
        CHECK(r.A == doctest::Approx(ref.A).epsilon(1e-12));
    }
}

TEST_CASE("medium rescaling tracks the parameter rescaling") {
    const ModelParams si = rb87_preset().to_params();
    MediumSpec m;
    m.length = 40.0;
    Impurity imp;
    imp.z0 = 20.0;
    imp.interaction.kind = InteractionModel::Kind::explicit_c6;
    imp.interaction.c6 = 1.0e9;
    m.impurity = imp;
    const MediumSpec c = to_dimensionless(m, si);
    CHECK(c.length == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(c.impurity->z0 == doctest::Approx(1.5).epsilon(1e-13));
    const double labs = si.l_abs();
    CHECK(c.impurity->interaction.c6 ==
          doctest::Approx(1.0e9 / (si.gamma * std::pow(labs, 6)))
              .epsilon(1e-12));
}
