#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "geonium/config.hpp"
#include "helpers.hpp"

using namespace geonium;

namespace {

std::string error_message(const std::string& text) {
    try {
        parse_config(text);
    } catch (const InvalidConfigError& e) {
        return e.what();
    }
    return "no error";
}

const char* kFullConfig =
    "# comment line\n"
    "[trap]\n"
    "B = 2.0   ; inline comment\n"
    "V0 = 1.0\n"
    "d = 1.0\n"
    "g_factor = 8.0\n"
    "\n"
    "[constants]\n"
    "hbar = 1.0\n"
    "e = 1.0\n"
    "m = 1.0\n"
    "[drive]\n"
    "alpha = 5.8925565098878960e-3\n"
    "k = 0.42426406871192851\n"
    "Omega = 7.0\n"
    "phi = 0.25\n"
    "varphi = -0.5\n"
    "[spin_drive]\n"
    "b = 0.125\n"
    "theta = 0.1\n"
    "[sim]\n"
    "axial_dim = 6\n"
    "cyclotron_dim = 3\n"
    "magnetron_dim = 1\n"
    "step = 0.02\n"
    "compensation_n = 2\n"
    "[thresholds]\n"
    "fidelity = 0.95\n"
    "leakage = 0.02\n"
    "[bottle]\n"
    "omega_tilde = 1.5\n";

} // namespace

TEST_SUITE("config") {

TEST_CASE("full parse") {
    const FileConfig cfg = parse_config(kFullConfig);
    CHECK(cfg.trap.B == 2.0);
    CHECK(cfg.trap.V0 == 1.0);
    CHECK(cfg.trap.d == 1.0);
    CHECK(cfg.trap.g_factor == 8.0);
    CHECK(cfg.trap.hbar == 1.0);
    CHECK(cfg.trap.electron_charge_mag == 1.0);
    CHECK(cfg.trap.electron_mass == 1.0);
    CHECK(cfg.drive.alpha_mag == 5.8925565098878960e-3);
    CHECK(cfg.drive.k == 0.42426406871192851);
    CHECK(cfg.drive.Omega == 7.0);
    CHECK(cfg.drive.phi == 0.25);
    CHECK(cfg.drive.varphi == -0.5);
    CHECK(cfg.spin_drive.b == 0.125);
    CHECK(cfg.spin_drive.theta == 0.1);
    CHECK(cfg.sim.axial_dim == 6);
    CHECK(cfg.sim.cyclotron_dim == 3);
    CHECK(cfg.sim.magnetron_dim == 1);
    CHECK(cfg.sim.step == 0.02);
    CHECK(cfg.sim.compensation_n == 2);
    CHECK(cfg.thresholds.fidelity == 0.95);
    CHECK(cfg.thresholds.leakage == 0.02);
    CHECK(cfg.bottle_omega_tilde == 1.5);
    CHECK(cfg.hash == fnv1a(kFullConfig));
    CHECK(cfg.hash != 0);

    const HilbertSpec spec = cfg.spec();
    CHECK(spec.axial_dim == 6);
    CHECK(spec.cyclotron_dim == 3);
    CHECK(spec.magnetron_dim == 1);

    const SimContext ctx = cfg.context();
    CHECK(ctx.freqs.omega_z == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ctx.couplings.zeta == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(ctx.step == 0.02);
}

TEST_CASE("defaults when sections are omitted") {
    const FileConfig cfg = parse_config("[trap]\nB = 1.0\nV0 = 10.0\nd = 3.3e-3\n");
    CHECK(cfg.trap.g_factor == doctest::Approx(2.0023193));
    CHECK(cfg.trap.hbar == doctest::Approx(1.054571817e-34));
    CHECK(cfg.sim.axial_dim == 12);
    CHECK(cfg.sim.cyclotron_dim == 6);
    CHECK(cfg.sim.magnetron_dim == 1);
    CHECK(cfg.sim.step == 0.0);
    CHECK(cfg.thresholds.fidelity == 0.99);
    CHECK(cfg.thresholds.leakage == 0.01);
    CHECK(cfg.bottle_omega_tilde == 1.0);
    CHECK(cfg.drive.alpha_mag == 0.0);
    CHECK(cfg.spin_drive.b == 0.0);
}

TEST_CASE("hash test vectors") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 12638187200555641996ull);
    CHECK(fnv1a("ab") != fnv1a("ba"));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_message("[trap]\nB = 1\nV0 = 10\nd = nope\n").find("line 4") !=
          std::string::npos);
    CHECK(error_message("[trap]\nB = 1\nV0 = 10\nd = 3.3e-3\nwhat = 1\n")
              .find("line 5") != std::string::npos);
    CHECK(error_message("[warp]\nx = 1\n").find("line 1") != std::string::npos);
    CHECK(error_message("B = 1\n").find("line 1") != std::string::npos);
    CHECK(error_message("[trap]\nB\n").find("line 2") != std::string::npos);
}

TEST_CASE("semantic validation") {
    CHECK(error_message("") != "no error");                 // missing trap
    CHECK(error_message("[trap]\nB = 1\nV0 = 10\n") != "no error"); // missing d
    CHECK(error_message("[trap]\nB = -1\nV0 = 10\nd = 3.3e-3\n") != "no error");
    CHECK(error_message("[trap]\nB = 1\nV0 = 10\nd = 3.3e-3\n[sim]\n"
                        "axial_dim = 1\n") != "no error");
    CHECK(error_message("[trap]\nB = 1\nV0 = 10\nd = 3.3e-3\n[sim]\n"
                        "step = -0.1\n") != "no error");
    CHECK(error_message("[trap]\nB = 1\nV0 = 10\nd = 3.3e-3\n[drive]\n"
                        "alpha = -1\n") != "no error");
    CHECK(error_message("[trap]\nB = 1\nV0 = 10\nd = 3.3e-3\n[bottle]\n"
                        "omega_tilde = 0\n") != "no error");
}

TEST_CASE("last assignment wins") {
    const FileConfig cfg =
        parse_config("[trap]\nB = 1\nB = 2\nV0 = 10\nd = 3.3e-3\n");
    CHECK(cfg.trap.B == 2.0);
}

TEST_CASE("load from disk") {
    CHECK_THROWS_AS(load_config("/nonexistent/geonium.ini"),
                    InvalidConfigError);

    // the shipped gate demo config has the advertised derived couplings
    const FileConfig cfg = load_config(testutil::config_path("cn.ini"));
    const SimContext ctx = cfg.context();
    CHECK(ctx.couplings.zeta == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(ctx.couplings.lamb_dicke == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(ctx.couplings.kappa == doctest::Approx(1.8e-3).epsilon(1e-12));
    CHECK(ctx.step == 0.02);
    CHECK(cfg.thresholds.fidelity == 0.99);

    // the hash is over the raw bytes
    std::ifstream f(testutil::config_path("cn.ini"), std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    CHECK(cfg.hash == fnv1a(ss.str()));

    const FileConfig rwa = load_config(testutil::config_path("rwa.ini"));
    CHECK(rwa.context().couplings.zeta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rwa.context().couplings.lamb_dicke ==
          doctest::Approx(0.05).epsilon(1e-12));

    const FileConfig ref = load_config(testutil::config_path("reference.ini"));
    CHECK(ref.context().freqs.hierarchy_ok());
}

} // TEST_SUITE
