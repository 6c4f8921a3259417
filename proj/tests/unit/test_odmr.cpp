#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "nvspin/odmr_synth.hpp"

using namespace nvspin;

namespace {

TransitionLine flat_line(double f, double strength, double B0 = 0.0, double B1 = 1.0) {
    TransitionLine l;
    l.family = {FamilyKind::nv_0_to_minus1};
    l.points = {{B0, f, strength}, {B1, f, strength}};
    return l;
}

std::vector<double> grid(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

double measured_fwhm(const OdmrMap& m, std::size_t row) {
    std::size_t count = 0;
    for (double v : m.signal[row]) count += v >= 0.5 ? 1 : 0;
    return static_cast<double>(count) * (m.f_axis[1] - m.f_axis[0]);
}

}  // namespace

TEST(Lorentzian, Values) {
    EXPECT_EQ(lorentzian(0.0, 10e6), 1.0);
    EXPECT_DOUBLE_EQ(lorentzian(5e6, 10e6), 0.5);
    EXPECT_DOUBLE_EQ(lorentzian(-5e6, 10e6), 0.5);
}

TEST(SynthesizeMap, OnLinePixelAndClamp) {
    const std::vector<double> f{1e9, 1.005e9, 2e9};
    const std::vector<double> B{0.5};
    const auto m = synthesize_map({flat_line(1e9, 0.3)}, f, B, 10e6);
    EXPECT_DOUBLE_EQ(m(0, 0), 0.3);
    EXPECT_DOUBLE_EQ(m(0, 1), 0.15);

    const auto two = synthesize_map({flat_line(1e9, 1.0), flat_line(1e9, 1.0)}, f, B, 10e6);
    EXPECT_EQ(two(0, 0), 1.0);
    for (const auto& row : two.signal)
        for (double v : row) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
}

TEST(SynthesizeMap, EmptyLinesGiveZeroMap) {
    const auto m = synthesize_map({}, grid(0, 5e9, 50), grid(0, 0.15, 20), 10e6);
    ASSERT_EQ(m.signal.size(), 20u);
    for (const auto& row : m.signal) {
        ASSERT_EQ(row.size(), 50u);
        for (double v : row) EXPECT_EQ(v, 0.0);
    }
}

TEST(SynthesizeMap, LineOutsideItsFieldRangeIsSilent) {
    const auto m = synthesize_map({flat_line(1e9, 1.0, 0.2, 0.3)}, {1e9}, {0.1, 0.25, 0.4}, 10e6);
    EXPECT_EQ(m(0, 0), 0.0);
    EXPECT_EQ(m(1, 0), 1.0);
    EXPECT_EQ(m(2, 0), 0.0);
}

TEST(SynthesizeMap, InterpolatesLineFrequency) {
    TransitionLine l;
    l.points = {{0.0, 1e9, 1.0}, {1.0, 2e9, 1.0}};
    const auto m = synthesize_map({l}, {1.25e9}, {0.25}, 1e6);
    EXPECT_NEAR(m(0, 0), 1.0, 1e-12);
}

TEST(SynthesizeMap, ReorderInvariant) {
    const auto lines = lines_over_sweep(SpinSystem::nv, {}, {-4.0, 95.0}, SweepGrid{0.0, 0.15, 100});
    const auto f = grid(0, 5e9, 200);
    const auto B = grid(0, 0.15, 40);
    const auto ref = synthesize_map(lines, f, B, 50e6);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        auto shuffled = lines;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto m = synthesize_map(shuffled, f, B, 50e6, 1 + trial);
        EXPECT_EQ(m.signal, ref.signal);
    }
}

TEST(SynthesizeMap, HalvingLinewidthHalvesFwhm) {
    const auto f = grid(0.9e9, 1.1e9, 4001);
    const double step = f[1] - f[0];
    for (double w : {20e6, 8e6}) {
        const auto wide = synthesize_map({flat_line(1e9, 1.0)}, f, {0.5}, w);
        const auto narrow = synthesize_map({flat_line(1e9, 1.0)}, f, {0.5}, w / 2.0);
        EXPECT_NEAR(measured_fwhm(wide, 0), w, step);
        EXPECT_NEAR(measured_fwhm(narrow, 0), measured_fwhm(wide, 0) / 2.0, step);
    }
}

TEST(SynthesizeMap, RejectsBadLinewidth) {
    EXPECT_THROW(synthesize_map({}, {1.0}, {1.0}, 0.0), std::invalid_argument);
}

TEST(MapExport, PgmAndCsvConsistent) {
    const auto lines = lines_over_sweep(SpinSystem::nv, {}, {-4.0, 95.0}, SweepGrid{0.0, 0.15, 100});
    const auto m = synthesize_map(lines, grid(1e9, 4e9, 64), grid(0, 0.15, 16), 30e6);

    std::ostringstream pgm;
    write_map_pgm(pgm, m);
    const std::string bytes = pgm.str();
    const std::string header = "P5\n64 16\n255\n";
    ASSERT_EQ(bytes.substr(0, header.size()), header);
    ASSERT_EQ(bytes.size(), header.size() + 64u * 16u);

    std::ostringstream csv;
    write_map_csv(csv, m);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("B_tesla\\f_hz,", 0), 0u);
    for (std::size_t ib = 0; ib < 16; ++ib) {
        std::getline(in, line);
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        for (std::size_t jf = 0; jf < 64; ++jf) {
            std::getline(row, cell, ',');
            const double v = std::stod(cell);
            EXPECT_EQ(static_cast<unsigned char>(bytes[header.size() + ib * 64 + jf]),
                      static_cast<unsigned char>(std::lround(255.0 * v)));
        }
    }
}
