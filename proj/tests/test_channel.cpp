#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "zoma/channel.hpp"
#include "zoma/grid.hpp"

namespace zoma {
namespace {

// Direct summation in extended precision, written independently of
// channel_response.
std::complex<long double> reference_response(const ChannelRealization& ch,
                                             const Position& p) {
  const long double k = 2.0L * 3.141592653589793238462643383279503L / ch.wavelength();
  std::complex<long double> h{0.0L, 0.0L};
  for (const auto& path : ch.paths()) {
    const long double rho =
        static_cast<long double>(p.x) * std::cos(static_cast<long double>(path.elevation)) *
            std::sin(static_cast<long double>(path.azimuth)) +
        static_cast<long double>(p.y) * std::sin(static_cast<long double>(path.elevation));
    const long double phase = -k * rho;
    h += std::complex<long double>(path.gain.real(), path.gain.imag()) *
         std::complex<long double>(std::cos(phase), std::sin(phase));
  }
  return h;
}

ChannelRealization single_path(Complex gain, double elevation, double azimuth) {
  return ChannelRealization({PathComponent{gain, elevation, azimuth}}, 1.0);
}

TEST(SampleChannel, RejectsBadArguments) {
  EXPECT_THROW(sample_channel(7, 0), std::invalid_argument);
  EXPECT_THROW(sample_channel(7, 3, 0.0), std::invalid_argument);
  EXPECT_THROW(sample_channel(7, 3, -1.0), std::invalid_argument);
}

TEST(SampleChannel, SinglePathPowerIsNormalized) {
  double sum = 0.0;
  const int n = 100000;
  for (int seed = 0; seed < n; ++seed) {
    sum += std::norm(sample_channel(static_cast<std::uint64_t>(seed), 1).paths()[0].gain);
  }
  EXPECT_NEAR(sum / n, 1.0, 0.02);
}

TEST(SampleChannel, DeterministicAndAnglesInRange) {
  const auto a = sample_channel(7, 30);
  const auto b = sample_channel(7, 30);
  ASSERT_EQ(a.num_paths(), 30u);
  for (std::size_t l = 0; l < a.num_paths(); ++l) {
    EXPECT_EQ(a.paths()[l].gain, b.paths()[l].gain);
    EXPECT_EQ(a.paths()[l].elevation, b.paths()[l].elevation);
    EXPECT_EQ(a.paths()[l].azimuth, b.paths()[l].azimuth);
    EXPECT_LE(std::abs(a.paths()[l].elevation), kPi / 2);
    EXPECT_LE(std::abs(a.paths()[l].azimuth), kPi / 2);
  }
  EXPECT_NE(sample_channel(8, 30).paths()[0].gain, a.paths()[0].gain);
}

TEST(SampleChannel, PhaseAccessorRange) {
  const auto ch = sample_channel(11, 100);
  for (const auto& p : ch.paths()) {
    EXPECT_GE(p.magnitude(), 0.0);
    EXPECT_GT(p.phase(), -kPi);
    EXPECT_LE(p.phase(), kPi);
  }
}

TEST(PathLengthDelta, HandValues) {
  EXPECT_EQ(path_length_delta({0.0, 0.0}, 0.3, -1.1), 0.0);
  EXPECT_DOUBLE_EQ(path_length_delta({1.7, 0.0}, 0.0, kPi / 2), 1.7);
  EXPECT_DOUBLE_EQ(path_length_delta({0.0, -0.8}, kPi / 2, 0.4), -0.8);
}

TEST(FieldResponse, ReferenceIsAllOnes) {
  const auto ch = sample_channel(7, 30);
  for (const auto& f : field_response(ch, {0.0, 0.0})) {
    EXPECT_EQ(f, Complex(1.0, 0.0));
  }
}

TEST(FieldResponse, QuarterWavelengthGivesJ) {
  const auto ch = single_path({1.0, 0.0}, 0.0, kPi / 2);
  const auto f = field_response(ch, {0.25, 0.0});
  ASSERT_EQ(f.size(), 1u);
  EXPECT_NEAR(f[0].real(), 0.0, 1e-15);
  EXPECT_NEAR(f[0].imag(), 1.0, 1e-15);
}

TEST(FieldResponse, UnitModulusEverywhere) {
  const auto ch = sample_channel(3, 100);
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const Position p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    for (const auto& f : field_response(ch, p)) {
      EXPECT_LT(std::abs(std::abs(f) - 1.0), 1e-12);
    }
  }
}

TEST(ChannelResponse, ReferenceEqualsSumOfGains) {
  const auto ch = sample_channel(7, 30);
  Complex sum{0.0, 0.0};
  for (const auto& p : ch.paths()) sum += p.gain;
  EXPECT_EQ(channel_response(ch, {0.0, 0.0}), sum);
}

TEST(ChannelResponse, SinglePathMagnitudeIsFlat) {
  const auto ch = single_path(std::polar(0.7, 1.2), 0.4, -0.9);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Position p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    EXPECT_NEAR(std::abs(channel_response(ch, p)), 0.7, 1e-14);
  }
}

TEST(ChannelResponse, MatchesExtendedPrecisionSum) {
  const auto ch = sample_channel(7, 30);
  const Position p{0.5, -0.3};
  const auto ref = reference_response(ch, p);
  const Complex h = channel_response(ch, p);
  const long double err = std::abs(std::complex<long double>(h.real(), h.imag()) - ref);
  EXPECT_LT(err / std::abs(ref), 1e-12L);
}

TEST(ChannelResponse, GlobalPhaseRotationKeepsMagnitude) {
  const auto ch = sample_channel(21, 30);
  std::vector<PathComponent> rotated = ch.paths();
  const Complex spin = std::polar(1.0, 0.77);
  for (auto& p : rotated) p.gain *= spin;
  const ChannelRealization ch2(rotated, ch.wavelength());
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Position p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    EXPECT_NEAR(std::abs(channel_response(ch2, p)),
                std::abs(channel_response(ch, p)), 1e-12);
  }
}

TEST(PowerExpansion, SinglePathIsMagnitudeSquared) {
  const auto ch = single_path(std::polar(0.6, -2.0), 0.1, 0.2);
  EXPECT_NEAR(channel_power_expansion(ch, {1.3, -0.4}), 0.36, 1e-15);
}

TEST(PowerExpansion, AgreesWithResponseOverSweep) {
  const auto ch = sample_channel(7, 30);
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Position p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double direct = std::norm(channel_response(ch, p));
    const double expanded = channel_power_expansion(ch, p);
    worst = std::max(worst, std::abs(direct - expanded) / direct);
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(ReceiveSnr, Definition) {
  const auto ch = single_path({1.0, 0.0}, 0.0, 0.0);
  EXPECT_NEAR(receive_snr_db(ch, {0.0, 0.0}, 1000.0, 1.0), 30.0, 1e-12);
  EXPECT_NEAR(db_to_linear(30.0), 1000.0, 1e-9);
  EXPECT_THROW(receive_snr_db(ch, {0.0, 0.0}, 1000.0, 0.0), std::invalid_argument);
  EXPECT_THROW(receive_snr_db(ch, {0.0, 0.0}, 0.0, 1.0), std::invalid_argument);
}

TEST(ReceiveSnr, SinglePathInvariantAcrossPositions) {
  const auto ch = single_path(std::polar(0.9, 0.3), -0.5, 1.0);
  EXPECT_NEAR(receive_snr_db(ch, {1.9, -1.2}, 1000.0, 1.0),
              receive_snr_db(ch, {-0.3, 0.7}, 1000.0, 1.0), 1e-12);
}

TEST(Measure, NoiselessIsScaledResponse) {
  const auto ch = sample_channel(7, 30);
  MeasurementOracle oracle(ch, 1000.0, 0.0, 1);
  const Position p{0.3, 1.1};
  EXPECT_EQ(oracle.measure(p), std::sqrt(1000.0) * channel_response(ch, p));
  EXPECT_EQ(oracle.measurement_count(), 1u);
}

TEST(Measure, FreshNoisePerCall) {
  MeasurementOracle oracle(sample_channel(7, 30), 1000.0, 1.0, 1);
  const Position p{0.3, 1.1};
  const Complex a = oracle.measure(p);
  const Complex b = oracle.measure(p);
  EXPECT_NE(a, b);
  EXPECT_EQ(oracle.measurement_count(), 2u);
}

TEST(Measure, NoiseVarianceMatches) {
  const auto ch = sample_channel(7, 30);
  const double sigma2 = 2.5;
  MeasurementOracle oracle(ch, 1000.0, sigma2, 42);
  const Position p{-0.7, 0.2};
  const Complex clean = std::sqrt(1000.0) * channel_response(ch, p);
  const int n = 100000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::norm(oracle.measure(p) - clean);
  EXPECT_NEAR(acc / n / sigma2, 1.0, 0.02);
  EXPECT_EQ(oracle.measurement_count(), static_cast<std::uint64_t>(n));
}

TEST(Measure, RejectsBadPowers) {
  EXPECT_THROW(MeasurementOracle(sample_channel(1, 2), 0.0, 1.0, 1),
               std::invalid_argument);
  EXPECT_THROW(MeasurementOracle(sample_channel(1, 2), 1.0, -1.0, 1),
               std::invalid_argument);
}

TEST(Region, MembershipAndValidation) {
  const Region r(4.0);
  EXPECT_TRUE(r.contains({2.0, -2.0}));
  EXPECT_FALSE(r.contains({2.0 + 1e-12, 0.0}));
  EXPECT_THROW(Region(0.0), std::invalid_argument);
}

TEST(SquareGrid, IncludesBothEdges) {
  const SquareGrid grid(Region(4.0), 0.05);
  EXPECT_EQ(grid.points_per_axis(), 81);
  EXPECT_EQ(grid.size(), 81u * 81u);
  EXPECT_DOUBLE_EQ(grid.axis().front(), -2.0);
  EXPECT_NEAR(grid.axis().back(), 2.0, 1e-12);
  EXPECT_EQ(grid.at(1), (Position{grid.axis()[1], -2.0}));
}

TEST(SquareGrid, CoarseResolutionCollapsesToCorner) {
  const SquareGrid grid(Region(4.0), 10.0);
  ASSERT_EQ(grid.size(), 1u);
  EXPECT_EQ(grid.at(0), (Position{-2.0, -2.0}));
  EXPECT_EQ(SquareGrid(Region(4.0), 0.3).points_per_axis(), 14);
}

}  // namespace
}  // namespace zoma
