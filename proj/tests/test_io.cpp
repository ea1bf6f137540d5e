#include "kswall/io.hpp"
#include "kswall/scenes.hpp"
#include "kswall/svg.hpp"

#include <gtest/gtest.h>

using namespace kswall;

#ifndef KSWALL_SCENES_DIR
#define KSWALL_SCENES_DIR "scenes"
#endif

namespace {

std::string scene_path(const std::string& name) { return std::string(KSWALL_SCENES_DIR) + "/" + name; }

std::string parse_error(const std::string& text) {
  try {
    scene_from_json(Json::parse(text));
  } catch (const ParseError& e) {
    return e.what();
  } catch (const SceneError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(SceneJson, RoundTripIsByteIdentical) {
  for (const auto* name : {"pentagon.json", "pentagon_energy.json", "kronecker2.json", "three_singularities.json"}) {
    const auto s = scene_from_json(load_json_file(scene_path(name)));
    const auto text = dump(scene_to_json(s));
    EXPECT_EQ(dump(scene_to_json(scene_from_json(Json::parse(text)))), text) << name;
  }
}

TEST(SceneJson, FieldsSurvive) {
  Scene s = pentagon_scene(Truncation::energy(Rational(9, 2)));
  s.sigma = QuadraticRefinement::standard(1, 0);
  s.epsilon = 0;
  const auto back = scene_from_json(Json::parse(dump(scene_to_json(s))));
  EXPECT_EQ(back.truncation, s.truncation);
  EXPECT_EQ(back.sigma.name(), "default+(1,0)");
  EXPECT_EQ(back.epsilon, 0);
  EXPECT_EQ(back.singularities, s.singularities);
}

TEST(SceneJson, ErrorsNameTheField) {
  EXPECT_NE(parse_error(R"({"singularities": []})").find("mode"), std::string::npos);
  EXPECT_NE(parse_error(R"({"mode": {"degree": 3}, "singularities": [{"pos": ["0","0"], "direction": [1,0]},
                                     {"pos": ["1","x"], "direction": [0,1]}]})")
                .find("singularities[1].pos[1]"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"mode": {"degree": 3}, "singularities": [{"pos": ["0","0"]}]})").find("singularities[0].direction"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"mode": {"energy": "3"}, "sigma": "bogus", "singularities": []})").find("sigma"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"mode": {"degree": 3}, "singularities": [{"pos": ["0","0"], "direction": [2,0]}]})"), "");
}

TEST(DiagramJson, RoundTripIsByteIdentical) {
  for (const auto* name : {"pentagon.json", "kronecker2.json", "pentagon_energy.json"}) {
    const auto d = complete(scene_from_json(load_json_file(scene_path(name))));
    const auto text = dump(diagram_to_json(d));
    const auto back = diagram_from_json(Json::parse(text));
    EXPECT_EQ(back.rays, d.rays) << name;
    EXPECT_EQ(dump(diagram_to_json(back)), text) << name;
  }
}

TEST(DiagramJson, ReloadedDiagramIsConsistent) {
  const auto d = complete(scene_from_json(load_json_file(scene_path("kronecker2.json"))));
  const auto back = diagram_from_json(Json::parse(dump(diagram_to_json(d))));
  EXPECT_TRUE(check_consistency(back).consistent());
}

TEST(DiagramJson, BadParentIndex) {
  auto j = diagram_to_json(complete(pentagon_scene(Truncation::degree(2))));
  j["rays"][4]["parents"][0] = 17;
  try {
    diagram_from_json(j);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "rays[4].parents[0]: no such ray");
  }
}

TEST(DiscJson, RoundTrip) {
  const auto disc = disc_from_json(load_json_file(scene_path("pentagon_disc.json")));
  ASSERT_EQ(disc.vertices.size(), 4u);
  EXPECT_EQ(disc.vertices[2].singularity, std::optional<std::size_t>(0));
  const auto text = dump(disc_to_json(disc));
  EXPECT_EQ(disc_from_json(Json::parse(text)), disc);
  EXPECT_EQ(dump(disc_to_json(disc_from_json(Json::parse(text)))), text);
}

TEST(DiscJson, BadSingularityReference) {
  auto j = disc_to_json(disc_from_json(load_json_file(scene_path("pentagon_disc.json"))));
  j["vertices"][2]["pos"] = "sing:x";
  EXPECT_THROW(disc_from_json(j), ParseError);
}

TEST(Svg, DeterministicAndWellFormed) {
  const auto d = complete(pentagon_scene(Truncation::degree(4)));
  const auto a = render_diagram_svg(d);
  EXPECT_EQ(a, render_diagram_svg(d));
  EXPECT_EQ(a.rfind("<svg", 0), 0u);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  const auto disc = disc_from_json(load_json_file(scene_path("pentagon_disc.json")));
  const auto b = render_disc_svg(disc, d.scene);
  EXPECT_EQ(b, render_disc_svg(disc, d.scene));
  EXPECT_NE(b.find("</svg>"), std::string::npos);
}
