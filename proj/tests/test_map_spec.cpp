#include <gtest/gtest.h>

#include "itermaps/map_spec.hpp"

using namespace itermaps;

TEST(MapSpec, Atoms) {
  EXPECT_EQ(parse_map_spec("newton").family(), Family::Newton);
  const auto t = parse_map_spec("taylor:3");
  EXPECT_EQ(t.family(), Family::NewtonTaylor);
  EXPECT_EQ(t.k(), 3);
  const auto b = parse_map_spec("bary:4");
  EXPECT_EQ(b.family(), Family::NewtonBarycentric);
  EXPECT_EQ(b.k(), 4);
  EXPECT_EQ(b.theoretical_order(), 6);
  EXPECT_EQ(b.coefficients().max_order(), 4);
}

TEST(MapSpec, CompositionIsOuterThenInner) {
  const auto m = parse_map_spec("compose:bary:3,bary:2");
  ASSERT_EQ(m.family(), Family::Composition);
  EXPECT_EQ(m.outer().k(), 3);
  EXPECT_EQ(m.inner().k(), 2);
  EXPECT_EQ(m.label(), "t_32");
  EXPECT_EQ(m.theoretical_order(), 20);
}

TEST(MapSpec, NestedCompositionAndRoundTrip) {
  for (const char* s : {"newton", "taylor:0", "bary:20", "compose:bary:5,bary:4", "compose:compose:bary:1,newton,bary:2",
                        "compose:bary:1,compose:bary:2,newton"}) {
    EXPECT_EQ(parse_map_spec(s).spec(), s);
  }
  const auto m = parse_map_spec("compose:compose:bary:1,newton,bary:2");
  EXPECT_EQ(m.outer().family(), Family::Composition);
  EXPECT_EQ(m.inner().k(), 2);
}

TEST(MapSpec, Labels) {
  EXPECT_EQ(parse_map_spec("newton").label(), "t_0");
  EXPECT_EQ(parse_map_spec("taylor:1").label(), "T_1");
  EXPECT_EQ(parse_map_spec("compose:bary:2,bary:1").label(), "t_21");
  EXPECT_EQ(parse_map_spec("compose:bary:5,bary:4").label(), "t_54");
}

TEST(MapSpec, Errors) {
  for (const char* s : {"", "bary", "bary:", "bary:-1", "bary:x", "bary:2 ", "newton,", "compose:bary:1",
                        "compose:bary:1;bary:2", "Newton", "bary:21", "taylor:9999999", "compose:,"}) {
    EXPECT_THROW(parse_map_spec(s), MapSpecError) << "'" << s << "'";
  }
  EXPECT_NO_THROW(parse_map_spec("bary:25", 25));
}
