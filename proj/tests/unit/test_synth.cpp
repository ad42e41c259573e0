#include <gtest/gtest.h>

#include <set>

#include "foeed/synth.hpp"

namespace foeed {
namespace {

TEST(Synth, StandardImageIsBinary) {
  const ImageGrid img = make_test_image(SynthSpec::standard());
  EXPECT_EQ(img.width(), 300);
  EXPECT_EQ(img.height(), 300);
  std::set<double> levels(img.values().begin(), img.values().end());
  EXPECT_EQ(levels, (std::set<double>{0.0, 255.0}));
}

TEST(Synth, ForegroundFraction) {
  const ImageGrid img = make_test_image(SynthSpec::standard());
  std::size_t fg = 0;
  for (double v : img.values()) fg += v > 0.0;
  const double frac = static_cast<double>(fg) / img.size();
  EXPECT_GE(frac, 0.1);
  EXPECT_LE(frac, 0.5);
}

TEST(Synth, EmptySpecIsBlank) {
  SynthSpec spec;
  spec.size = 32;
  const ImageGrid img = make_test_image(spec);
  for (double v : img.values()) EXPECT_EQ(v, 0.0);
}

TEST(Synth, ContainsThinBar) {
  const SynthSpec spec = SynthSpec::standard();
  const ImageGrid img = make_test_image(spec);
  int thin_rows = 0, thick_rows = 0;
  for (int y = 0; y < 45; ++y) thin_rows += img(150, y) > 0.0;
  for (int y = 45; y < 90; ++y) thick_rows += img(150, y) > 0.0;
  EXPECT_GE(thin_rows, 1);
  EXPECT_LE(thin_rows, 2);
  EXPECT_GT(thick_rows, 2);
}

TEST(Synth, StarsAndCircleFilled) {
  const SynthSpec spec = SynthSpec::standard();
  const ImageGrid img = make_test_image(spec);
  ASSERT_EQ(spec.stars.size(), 2u);
  ASSERT_EQ(spec.circles.size(), 1u);
  for (const StarShape& s : spec.stars)
    EXPECT_EQ(img(static_cast<int>(s.cx * 300), static_cast<int>(s.cy * 300)), 255.0);
  const CircleShape& c = spec.circles[0];
  EXPECT_EQ(img(static_cast<int>(c.cx * 300), static_cast<int>(c.cy * 300)), 255.0);
}

TEST(Synth, Deterministic) {
  EXPECT_EQ(make_test_image(SynthSpec::standard(128)), make_test_image(SynthSpec::standard(128)));
}

}  // namespace
}  // namespace foeed
