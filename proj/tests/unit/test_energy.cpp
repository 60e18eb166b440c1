#include <gtest/gtest.h>

#include "generators.hpp"
#include "julienne/energy.hpp"

using namespace julienne;

TEST(Energy, MicrojouleScale) {
  EXPECT_EQ(Energy::from_microjoules(1.0).femtojoules(), 1'000'000'000);
  EXPECT_EQ(Energy::from_nanojoules(7.6).femtojoules(), 7'600'000);
  EXPECT_DOUBLE_EQ(Energy::from_femtojoules(131'969'420'000'000).microjoules(), 131969.42);
}

TEST(Energy, FormatTrimsTrailingZeros) {
  EXPECT_EQ(format_microjoules(Energy::from_femtojoules(131'969'420'000'000)), "131969.42");
  EXPECT_EQ(format_microjoules(Energy::zero()), "0");
  EXPECT_EQ(format_microjoules(Energy::from_femtojoules(1)), "0.000000001");
  EXPECT_EQ(format_microjoules(Energy::from_femtojoules(-1'500'000'000)), "-1.5");
  EXPECT_EQ(format_microjoules(Energy::from_femtojoules(9 * Energy::kFemtoPerMicro)), "9");
}

TEST(Energy, ParseExactDecimals) {
  EXPECT_EQ(parse_microjoules("1.3")->femtojoules(), 1'300'000'000);
  EXPECT_EQ(parse_microjoules("0.1")->femtojoules(), 100'000'000);
  EXPECT_EQ(parse_microjoules("396")->femtojoules(), 396'000'000'000);
  EXPECT_EQ(parse_microjoules("1e3")->femtojoules(), 1'000'000'000'000);
  EXPECT_EQ(parse_microjoules("2.5E-3")->femtojoules(), 2'500'000);
  EXPECT_EQ(parse_microjoules("-4")->femtojoules(), -4'000'000'000);
  EXPECT_EQ(parse_nanojoules("6.2")->femtojoules(), 6'200'000);
}

TEST(Energy, ParseRoundsBeyondFemtojoules) {
  EXPECT_EQ(parse_microjoules("0.0000000004")->femtojoules(), 0);
  EXPECT_EQ(parse_microjoules("0.0000000005")->femtojoules(), 1);
}

TEST(Energy, ParseRejectsMalformed) {
  for (const char* bad : {"", "abc", "1.2.3", "1e", "--1", "1,5", " 1", "1 ", ".", "1e99999", "99999999999999"}) {
    EXPECT_FALSE(parse_microjoules(bad).has_value()) << bad;
  }
}

TEST(Energy, UnitSuffixes) {
  EXPECT_EQ(*parse_energy_with_unit("132mJ"), *parse_microjoules("132000"));
  EXPECT_EQ(*parse_energy_with_unit("132000uJ"), *parse_microjoules("132000"));
  EXPECT_EQ(*parse_energy_with_unit("132000\xC2\xB5J"), *parse_microjoules("132000"));
  EXPECT_EQ(*parse_energy_with_unit("2.294J"), *parse_microjoules("2294000"));
  EXPECT_EQ(*parse_energy_with_unit("500nJ"), *parse_microjoules("0.5"));
  EXPECT_EQ(*parse_energy_with_unit("132000"), *parse_microjoules("132000"));
  EXPECT_FALSE(parse_energy_with_unit("mJ").has_value());
  EXPECT_FALSE(parse_energy_with_unit("12kJ").has_value());
}

TEST(EnergyProperty, FormatParseRoundTrip) {
  testgen::Gen g(7);
  for (int n = 0; n < 5000; ++n) {
    const auto fj = static_cast<std::int64_t>(g.u64() >> (1 + g.range(0, 62)));
    const Energy e = Energy::from_femtojoules(g.coin(0.5) ? fj : -fj);
    const auto back = parse_microjoules(format_microjoules(e));
    ASSERT_TRUE(back.has_value()) << format_microjoules(e);
    EXPECT_EQ(*back, e);
  }
}

TEST(EnergyProperty, ShortestDecimalRoundTrips) {
  testgen::Gen g(11);
  for (int n = 0; n < 2000; ++n) {
    const double v = g.unit() * 1e7;
    EXPECT_EQ(std::stod(shortest_decimal(v)), v);
  }
}
