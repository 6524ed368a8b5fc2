#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "handmenu/error.hpp"
#include "handmenu/pixelops.hpp"

namespace handmenu {
namespace {

// Direct per-pixel window sum with clamped coordinates, rounded half-up.
Frame blur_oracle(const Frame& in, int r) {
  Frame out(in.width(), in.height(), in.timestamp_ms());
  const int n = (2 * r + 1) * (2 * r + 1);
  for (int y = 0; y < in.height(); ++y) {
    for (int x = 0; x < in.width(); ++x) {
      int sum[3] = {0, 0, 0};
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const Rgb p = in.at(std::clamp(x + dx, 0, in.width() - 1), std::clamp(y + dy, 0, in.height() - 1));
          sum[0] += p.r;
          sum[1] += p.g;
          sum[2] += p.b;
        }
      }
      auto round_half_up = [n](int s) { return static_cast<std::uint8_t>(std::floor(static_cast<double>(s) / n + 0.5)); };
      out.set(x, y, {round_half_up(sum[0]), round_half_up(sum[1]), round_half_up(sum[2])});
    }
  }
  return out;
}

// Second algebraic route to hue: distances of each channel from the max.
double hue_oracle(int r, int g, int b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  if (mx == mn) return 0.0;
  const double rc = (mx - r) / (mx - mn);
  const double gc = (mx - g) / (mx - mn);
  const double bc = (mx - b) / (mx - mn);
  double h;
  if (r == mx) {
    h = bc - gc;
  } else if (g == mx) {
    h = 2.0 + rc - bc;
  } else {
    h = 4.0 + gc - rc;
  }
  h = std::fmod(h / 6.0, 1.0);
  if (h < 0) h += 1.0;
  return h * 360.0;
}

Frame random_frame(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> byte(0, 255);
  Frame f(w, h);
  for (auto& p : f.pixels()) p = static_cast<std::uint8_t>(byte(rng));
  return f;
}

TEST(BoxBlur, ImpulseSpreadsToNeighbours) {
  Frame f(5, 5);
  f.set(2, 2, {255, 255, 255});
  const Frame expected = blur_oracle(f, 1);
  ASSERT_EQ(expected.at(2, 2).r, 28);  // frozen from the oracle: round(255/9)

  const Frame out = box_blur(f, 1);
  EXPECT_EQ(out, expected);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      EXPECT_EQ(out.at(2 + dx, 2 + dy), (Rgb{28, 28, 28}));
    }
  }
  EXPECT_EQ(out.at(0, 0), (Rgb{0, 0, 0}));
}

TEST(BoxBlur, ConstantFrameIsFixedPoint) {
  const Frame f = Frame::filled(9, 7, {77, 77, 77}, 12);
  for (int r = 0; r <= 3; ++r) EXPECT_EQ(box_blur(f, r), f) << "radius " << r;
}

TEST(BoxBlur, RadiusZeroIsIdentity) {
  std::mt19937 rng(7);
  const Frame f = random_frame(rng, 13, 11);
  EXPECT_EQ(box_blur(f, 0), f);
}

TEST(BoxBlur, MatchesOracleOnRandomFrames) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 24);
    const int h = 1 + static_cast<int>(rng() % 24);
    const Frame f = random_frame(rng, w, h);
    const int r = static_cast<int>(rng() % (std::min(w, h) / 2 + 1));
    EXPECT_EQ(box_blur(f, r), blur_oracle(f, r)) << w << "x" << h << " r=" << r;
  }
}

TEST(BoxBlur, InteriorMassPreserved) {
  std::mt19937 rng(3);
  const int r = 2;
  Frame f(20, 16);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int y = 2 * r; y < 16 - 2 * r; ++y) {
    for (int x = 2 * r; x < 20 - 2 * r; ++x) {
      const auto v = static_cast<std::uint8_t>(byte(rng));
      f.set(x, y, {v, v, v});
    }
  }
  const Frame out = box_blur(f, r);
  long in_sum = 0;
  long out_sum = 0;
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 20; ++x) {
      in_sum += f.at(x, y).r;
      out_sum += out.at(x, y).r;
    }
  }
  EXPECT_LE(std::abs(in_sum - out_sum), 20 * 16 / 2);
}

TEST(BoxBlur, RejectsRadiusBeyondHalfTheShortSide) {
  const Frame f(8, 6);
  EXPECT_NO_THROW(box_blur(f, 3));
  try {
    box_blur(f, 4);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("[0, 3]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(box_blur(f, -1), ParameterError);
}

TEST(RgbToHsv, Anchors) {
  const HsvPixel red = rgb_to_hsv(255, 0, 0);
  EXPECT_EQ(red.h, 0.0);
  EXPECT_EQ(red.s, 1.0);
  EXPECT_EQ(red.v, 1.0);

  const HsvPixel gray = rgb_to_hsv(128, 128, 128);
  EXPECT_EQ(gray.h, 0.0);
  EXPECT_EQ(gray.s, 0.0);
  EXPECT_EQ(gray.v, 128.0 / 255.0);

  // max = 192 (blue), delta = 128: h = 60 * ((64 - 128) / 128 + 4) = 210
  const HsvPixel p = rgb_to_hsv(64, 128, 192);
  EXPECT_NEAR(p.h, 210.0, 210.0 * 1e-9);
  EXPECT_EQ(p.s, 2.0 / 3.0);
  EXPECT_EQ(p.v, 192.0 / 255.0);
}

TEST(RgbToHsv, GraysHaveNoSaturation) {
  for (int x = 0; x < 256; ++x) {
    const auto b = static_cast<std::uint8_t>(x);
    const HsvPixel p = rgb_to_hsv(b, b, b);
    EXPECT_EQ(p.s, 0.0);
    EXPECT_EQ(p.h, 0.0);
  }
}

TEST(RgbToHsv, AgreesWithIndependentHueFormula) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 10000; ++i) {
    const int r = byte(rng), g = byte(rng), b = byte(rng);
    const HsvPixel p = rgb_to_hsv(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                  static_cast<std::uint8_t>(b));
    double expected = hue_oracle(r, g, b);
    double diff = std::abs(p.h - expected);
    diff = std::min(diff, 360.0 - diff);  // 0 and 360 are the same hue
    ASSERT_LT(diff, 1e-9) << r << "," << g << "," << b;
    ASSERT_GE(p.h, 0.0);
    ASSERT_LT(p.h, 360.0);
  }
}

TEST(HsvRange, Validation) {
  EXPECT_NO_THROW((HsvRange{350, 10, 0.5, 1, 0.5, 1}.validate()));
  EXPECT_THROW((HsvRange{360, 10, 0, 1, 0, 1}.validate()), ParameterError);
  EXPECT_THROW((HsvRange{0, 10, 0.6, 0.5, 0, 1}.validate()), ParameterError);
  EXPECT_THROW((HsvRange{0, 10, 0, 1, 0, 1.5}.validate()), ParameterError);
  EXPECT_THROW((HsvRange{NAN, 10, 0, 1, 0, 1}.validate()), ParameterError);
}

TEST(ThresholdHsv, WrappedRedBandAcceptsRed) {
  const Frame red = Frame::filled(6, 4, {255, 0, 0});
  const BinaryMask m = threshold_hsv(red, HsvRange{350, 10, 0.5, 1, 0.5, 1});
  EXPECT_EQ(m.count(), 24u);
}

TEST(ThresholdHsv, FullBandAcceptsEverything) {
  std::mt19937 rng(5);
  const Frame f = random_frame(rng, 17, 9);
  const BinaryMask m = threshold_hsv(f, HsvRange{0, 359.999, 0, 1, 0, 1});
  EXPECT_EQ(m.count(), 17u * 9u);
}

TEST(ThresholdHsv, AzureOutsideRedBand) {
  const Frame f = Frame::filled(5, 5, {64, 128, 192});
  EXPECT_EQ(threshold_hsv(f, HsvRange{350, 10, 0, 1, 0, 1}).count(), 0u);
}

TEST(ThresholdHsv, WrappedRangeIsUnionOfTwoBands) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> hue(0.0, 359.9);
  for (int trial = 0; trial < 50; ++trial) {
    const Frame f = random_frame(rng, 16, 16);
    double a = hue(rng), b = hue(rng);
    if (a <= b) std::swap(a, b);
    if (a == b) continue;
    const BinaryMask wrapped = threshold_hsv(f, HsvRange{a, b, 0.1, 0.9, 0.2, 1.0});
    const BinaryMask upper = threshold_hsv(f, HsvRange{a, std::nextafter(360.0, 0.0), 0.1, 0.9, 0.2, 1.0});
    const BinaryMask lower = threshold_hsv(f, HsvRange{0.0, b, 0.1, 0.9, 0.2, 1.0});
    for (std::size_t i = 0; i < wrapped.bits().size(); ++i) {
      ASSERT_EQ(wrapped.bits()[i], upper.bits()[i] | lower.bits()[i]);
    }
  }
}

TEST(ThresholdHsv, EnlargingTheRangeNeverClearsBits) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Frame f = random_frame(rng, 12, 12);
    const double h_lo = 100 * unit(rng), h_hi = h_lo + 150 * unit(rng);
    const HsvRange small{h_lo + 5, std::max(h_lo + 5, h_hi - 5), 0.3, 0.7, 0.3, 0.7};
    const HsvRange big{h_lo, h_hi + 5, 0.3 * unit(rng), 0.7 + 0.3 * unit(rng), 0.3 * unit(rng), 0.7 + 0.3 * unit(rng)};
    const BinaryMask ms = threshold_hsv(f, small);
    const BinaryMask mb = threshold_hsv(f, big);
    for (std::size_t i = 0; i < ms.bits().size(); ++i) {
      if (ms.bits()[i]) ASSERT_TRUE(mb.bits()[i]);
    }
  }
}

TEST(ThresholdHsv, MaskMatchesFrameDimensions) {
  const Frame f(31, 7);
  const BinaryMask m = threshold_hsv(f, HsvRange{});
  EXPECT_EQ(m.width(), 31);
  EXPECT_EQ(m.height(), 7);
}

TEST(Frame, RejectsBadDimensions) {
  EXPECT_THROW(Frame(0, 4), ParameterError);
  EXPECT_THROW(Frame(2, 2, std::vector<std::uint8_t>(11)), ParameterError);
}

}  // namespace
}  // namespace handmenu
