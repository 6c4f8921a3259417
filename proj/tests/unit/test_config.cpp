#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "config.hpp"
#include "nvspin/constants.hpp"

using namespace nvspin;
using namespace nvspin::cli;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string error_of(const std::string& text) {
    try {
        parse(text).validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Config, EmptyGivesDefaults) {
    const RunConfig c = parse("# nothing\n\n   \n");
    EXPECT_EQ(c.nv_D_ghz, 2.88);
    EXPECT_EQ(c.theta_deg, -4.0);
    EXPECT_EQ(c.frame, CrystalFrame::nv111);
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, ValuesCommentsAndWhitespace) {
    const RunConfig c = parse(
        "nv.D_ghz = 2.87   # trailing\n"
        "  orientation.frame=cubic\n"
        "fit.fit_D_E = true\n"
        "cavity.magnitude_only = 1\n"
        "sweep.points = 200\n"
        "run.seed = 42\n");
    EXPECT_EQ(c.nv_D_ghz, 2.87);
    EXPECT_EQ(c.frame, CrystalFrame::cubic);
    EXPECT_TRUE(c.fit_D_E);
    EXPECT_TRUE(c.cavity_magnitude_only);
    EXPECT_EQ(c.sweep.n_points, 200u);
    EXPECT_EQ(c.seed, 42u);
    EXPECT_NEAR(c.system_params().nv.D, angular(2.87e9), 1e-3);
}

TEST(Config, UnknownKeyNamesLine) {
    const std::string msg = error_of("nv.D_ghz = 2.88\n\n# c\nnv.Dghz = 3\n");
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
    EXPECT_NE(msg.find("nv.Dghz"), std::string::npos) << msg;
}

TEST(Config, SyntaxErrors) {
    EXPECT_NE(error_of("nv.D_ghz 2.88\n").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("nv.D_ghz =\n").find("missing value"), std::string::npos);
    EXPECT_NE(error_of("nv.D_ghz = 1\nnv.D_ghz = 2\n").find("duplicate"), std::string::npos);
    EXPECT_NE(error_of("nv.D_ghz = 2.8x\n").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("fit.fit_D_E = yes\n").find("true or false"), std::string::npos);
    EXPECT_NE(error_of("orientation.frame = hex\n").find("nv111"), std::string::npos);
    EXPECT_NE(error_of("sweep.points = 2.5\n").find("integer"), std::string::npos);
}

TEST(Config, ValidationNamesKey) {
    EXPECT_NE(error_of("rates.T_I_NV_hz = -1\n").find("rates.T_I_NV_hz"), std::string::npos);
    EXPECT_NE(error_of("nv.D_ghz = 0\n").find("nv.D_ghz"), std::string::npos);
    EXPECT_NE(error_of("rates.P_zO_magnitude = 1.5\n").find("P_zO"), std::string::npos);
    EXPECT_NE(error_of("cavity.P_zST = 0\n").find("P_zST"), std::string::npos);
    EXPECT_NE(error_of("run.threads = 0\n").find("run.threads"), std::string::npos);
    EXPECT_FALSE(error_of("sweep.B_start_t = 0.2\n").empty());
}

TEST(Config, EveryKeyAccepted) {
    const auto keys = config_keys();
    EXPECT_GT(keys.size(), 60u);
    for (const auto& k : keys) {
        std::string v = "1";
        if (k == "orientation.frame") v = "nv111";
        EXPECT_NO_THROW(parse(k + " = " + v + "\n")) << k;
    }
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/cfg.txt"), ConfigError); }

TEST(Config, ConstantsOverridePropagate) {
    const RunConfig c = parse("constants.k_B = 2.761298e-23\n");
    const RateParams r = c.rate_params(0.0, -1.0);
    EXPECT_NEAR(r.omega_T, 2.0 * thermal_frequency(3.6), 1e-3 * r.omega_T);
}
