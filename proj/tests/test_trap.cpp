#include <doctest.h>

#include "geonium/trap.hpp"
#include "helpers.hpp"

using namespace geonium;

TEST_SUITE("trap") {

TEST_CASE("electron frequencies in SI units") {
    // Frozen from an independent evaluation of the same closed forms
    // (B = 1 T, V0 = 10 V, d = 3.3 mm, free-electron g).
    TrapConfig cfg;
    const ModeFrequencies f = derive_frequencies(cfg);
    CHECK(f.omega_z == doctest::Approx(4.018803383037872e+08).epsilon(1e-12));
    CHECK(f.omega_c == doctest::Approx(1.758820010772163e+11).epsilon(1e-12));
    CHECK(f.omega_m == doctest::Approx(4.591368227731863e+05).epsilon(1e-12));
    CHECK(f.omega_s == doctest::Approx(1.760859626397655e+11).epsilon(1e-12));
    CHECK(f.hierarchy_ok());
    // Spin barely above cyclotron for g slightly above 2.
    CHECK(f.omega_s > f.omega_c);
    CHECK(f.omega_s / f.omega_c == doctest::Approx(2.0023193 / 2.0).epsilon(1e-14));
}

TEST_CASE("si drive couplings") {
    TrapConfig cfg;
    DriveConfig drv;
    drv.alpha_mag = 6.1e-10;
    drv.k = 587.0;
    SpinDriveConfig sd;
    sd.b = 1.0e-6;
    const Couplings c = derive_couplings(cfg, drv, sd);
    CHECK(c.epsilon == doctest::Approx(5.914027605807368e+09).epsilon(1e-12));
    CHECK(c.zeta == doctest::Approx(6.305110064242083e+04).epsilon(1e-12));
    CHECK(c.lamb_dicke == doctest::Approx(2.227759510674676e-04).epsilon(1e-12));
    CHECK(c.rabi_s == doctest::Approx(1.760859626397655e+05).epsilon(1e-12));
    CHECK(c.eta == doctest::Approx(c.lamb_dicke * c.zeta).epsilon(1e-14));
    CHECK(c.kappa ==
          doctest::Approx(2.0 * c.zeta * c.lamb_dicke * c.lamb_dicke)
              .epsilon(1e-14));
}

TEST_CASE("unit system couplings") {
    const SimContext ctx = testutil::cn_context();
    CHECK(ctx.freqs.omega_z == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ctx.freqs.omega_c == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ctx.freqs.omega_m == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(ctx.freqs.omega_s == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(ctx.couplings.zeta == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(ctx.couplings.lamb_dicke == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(ctx.couplings.eta == doctest::Approx(3.0e-3).epsilon(1e-12));
    CHECK(ctx.couplings.kappa == doctest::Approx(1.8e-3).epsilon(1e-12));
    CHECK(ctx.couplings.rabi_s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ctx.couplings.epsilon ==
          doctest::Approx(1.1785113019775792e-2).epsilon(1e-12));
}

TEST_CASE("one standing wave fixes epsilon and zeta together") {
    const SimContext ctx = testutil::cn_context();
    const double eps = epsilon_for_zeta(ctx.freqs, ctx.couplings.lamb_dicke,
                                        ctx.couplings.zeta);
    CHECK(eps == doctest::Approx(ctx.couplings.epsilon).epsilon(1e-12));
    CHECK_THROWS_AS(epsilon_for_zeta(ctx.freqs, 0.0, 1.0), InvalidInputError);
}

TEST_CASE("scaling laws") {
    TrapConfig a = testutil::unit_trap(2.0, 1.0, 8.0);
    TrapConfig b = a;
    b.B = 4.0;
    const ModeFrequencies fa = derive_frequencies(a);
    const ModeFrequencies fb = derive_frequencies(b);
    CHECK(fb.omega_c == doctest::Approx(2.0 * fa.omega_c).epsilon(1e-14));
    CHECK(fb.omega_s == doctest::Approx(2.0 * fa.omega_s).epsilon(1e-14));
    CHECK(fb.omega_z == doctest::Approx(fa.omega_z).epsilon(1e-14));
    CHECK(fb.omega_m == doctest::Approx(0.5 * fa.omega_m).epsilon(1e-14));

    TrapConfig c = a;
    c.V0 = 4.0;
    CHECK(derive_frequencies(c).omega_z ==
          doctest::Approx(2.0 * fa.omega_z).epsilon(1e-14));

    DriveConfig d1;
    d1.alpha_mag = 1e-3;
    d1.k = 0.3;
    DriveConfig d2 = d1;
    d2.alpha_mag = 2e-3;
    SpinDriveConfig sd;
    const Couplings c1 = derive_couplings(a, d1, sd);
    const Couplings c2 = derive_couplings(a, d2, sd);
    CHECK(c2.epsilon == doctest::Approx(2.0 * c1.epsilon).epsilon(1e-14));
    CHECK(c2.zeta == doctest::Approx(2.0 * c1.zeta).epsilon(1e-14));
    CHECK(c2.eta == doctest::Approx(2.0 * c1.eta).epsilon(1e-14));
    CHECK(c2.kappa == doctest::Approx(2.0 * c1.kappa).epsilon(1e-14));
    CHECK(c2.lamb_dicke == doctest::Approx(c1.lamb_dicke).epsilon(1e-14));
}

TEST_CASE("hierarchy detects a misconfigured trap") {
    TrapConfig weak;
    weak.B = 1e-9; // cyclotron far below axial
    CHECK_FALSE(derive_frequencies(weak).hierarchy_ok());
}

TEST_CASE("validation") {
    TrapConfig bad;
    bad.B = -1.0;
    CHECK_THROWS_AS(derive_frequencies(bad), InvalidConfigError);
    bad = TrapConfig{};
    bad.V0 = 0.0;
    CHECK_THROWS_AS(derive_frequencies(bad), InvalidConfigError);
    bad = TrapConfig{};
    bad.d = -3.3e-3;
    CHECK_THROWS_AS(derive_frequencies(bad), InvalidConfigError);

    DriveConfig drv;
    drv.alpha_mag = -1.0;
    CHECK_THROWS_AS(derive_couplings(TrapConfig{}, drv, SpinDriveConfig{}),
                    InvalidConfigError);
    drv = DriveConfig{};
    SpinDriveConfig sd;
    sd.b = -1e-6;
    CHECK_THROWS_AS(derive_couplings(TrapConfig{}, drv, sd), InvalidConfigError);

    // a drive-free trap is fine, every coupling is just zero
    const Couplings c =
        derive_couplings(TrapConfig{}, DriveConfig{}, SpinDriveConfig{});
    CHECK(c.epsilon == 0.0);
    CHECK(c.zeta == 0.0);
    CHECK(c.rabi_s == 0.0);
}

} // TEST_SUITE
