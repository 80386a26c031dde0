#include "mmc/model.hpp"
#include "mmc/model_index.hpp"

#include <gtest/gtest.h>

namespace mmc {
namespace {

Errc code_of(const Model &m) {
  try {
    validate(m);
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "model unexpectedly valid";
  return Errc::IoFailure;
}

TEST(Metatype, TagsRoundTrip) {
  for (int i = 0; i < kMetatypeCount; ++i) {
    const auto t = static_cast<Metatype>(i);
    EXPECT_EQ(metatype_from_tag(xml_tag(t)), t);
    EXPECT_EQ(metatype_from_display_name(display_name(t)), t);
  }
  EXPECT_FALSE(metatype_from_tag("gateway"));
  EXPECT_FALSE(metatype_from_tag("EClass"));
}

TEST(Metatype, NamedKinds) {
  EXPECT_TRUE(is_named(Metatype::Task));
  EXPECT_TRUE(is_named(Metatype::EReference));
  EXPECT_FALSE(is_named(Metatype::StartEvent));
  EXPECT_FALSE(is_named(Metatype::SequenceFlow));
}

TEST(Metatype, ContainmentRules) {
  EXPECT_TRUE(may_contain(Metatype::EPackage, Metatype::EPackage));
  EXPECT_TRUE(may_contain(Metatype::EPackage, Metatype::EClass));
  EXPECT_FALSE(may_contain(Metatype::EPackage, Metatype::EAttribute));
  EXPECT_TRUE(may_contain(Metatype::EClass, Metatype::EReference));
  EXPECT_TRUE(may_contain(Metatype::SubProcess, Metatype::SubProcess));
  EXPECT_FALSE(may_contain(Metatype::Process, Metatype::Process));
  EXPECT_FALSE(may_contain(Metatype::Task, Metatype::Task));
  EXPECT_FALSE(may_contain(Metatype::Process, Metatype::EClass));
}

TEST(Metatype, EdgeRoles) {
  EXPECT_TRUE(has_edge_role(Metatype::SequenceFlow, EdgeRole::Source));
  EXPECT_TRUE(has_edge_role(Metatype::SequenceFlow, EdgeRole::Target));
  EXPECT_FALSE(has_edge_role(Metatype::EReference, EdgeRole::Source));
  EXPECT_TRUE(has_edge_role(Metatype::EReference, EdgeRole::Target));
  EXPECT_FALSE(is_edge_bearing(Metatype::Task));
  EXPECT_TRUE(is_valid_edge_target(Metatype::EReference, Metatype::EClass));
  EXPECT_FALSE(is_valid_edge_target(Metatype::EReference, Metatype::EPackage));
  EXPECT_TRUE(is_valid_edge_target(Metatype::SequenceFlow, Metatype::SubProcess));
  EXPECT_FALSE(is_valid_edge_target(Metatype::SequenceFlow, Metatype::SequenceFlow));
}

TEST(ModelBuilder, BuildsValidModel) {
  const Model m = ModelBuilder(Metatype::EPackage, "de", "de")
                      .add("de", Metatype::EClass, "DomesticAnimal", "da")
                      .add("da", Metatype::EAttribute, "nickname", "n", {{"type", "EString"}})
                      .reference("da", "self", "r", "da")
                      .build();
  EXPECT_EQ(element_count(m), 4u);
  ASSERT_EQ(m.root.children.size(), 1u);
  EXPECT_EQ(m.root.children[0].children[0].attributes.at("type"), "EString");
  EXPECT_EQ(m.root.children[0].children[1].edge(EdgeRole::Target)->target, "da");
}

TEST(ModelBuilder, EmptyParentIsRoot) {
  const Model m = ModelBuilder(Metatype::Process, "P").add("", Metatype::Task, "t", "t").build();
  EXPECT_EQ(m.root.children.size(), 1u);
}

TEST(Validate, RejectsNonRootKindRoot) {
  Model m;
  m.root.type = Metatype::EClass;
  m.root.name = "C";
  EXPECT_EQ(code_of(m), Errc::ContainmentViolation);
}

TEST(Validate, RejectsContainmentViolation) {
  Model m;
  m.root = {Metatype::EPackage, "p", "", {}, {}, {{Metatype::EAttribute, "a", "", {}, {}, {}}}};
  EXPECT_EQ(code_of(m), Errc::ContainmentViolation);
}

TEST(Validate, RejectsMissingName) {
  Model m;
  m.root = {Metatype::Process, "P", "", {}, {}, {{Metatype::Task, "", "t", {}, {}, {}}}};
  EXPECT_EQ(code_of(m), Errc::MissingName);
}

TEST(Validate, RejectsNameOnUnnamedKind) {
  Model m;
  m.root = {Metatype::Process, "P", "", {}, {}, {{Metatype::StartEvent, "s", "s", {}, {}, {}}}};
  EXPECT_EQ(code_of(m), Errc::MalformedDocument);
}

TEST(Validate, RejectsDuplicateIds) {
  Model m;
  m.root = {Metatype::Process, "P", "x", {}, {}, {{Metatype::Task, "t", "x", {}, {}, {}}}};
  EXPECT_EQ(code_of(m), Errc::MalformedDocument);
}

TEST(Validate, RejectsDanglingAndMistypedEdges) {
  Model dangling = ModelBuilder(Metatype::Process, "P").add("", Metatype::Task, "t", "t").build();
  Element flow;
  flow.type = Metatype::SequenceFlow;
  flow.edges = {{EdgeRole::Source, "t"}, {EdgeRole::Target, "nowhere"}};
  dangling.root.children.push_back(flow);
  EXPECT_EQ(code_of(dangling), Errc::DanglingEdge);

  Model mistyped = dangling;
  mistyped.root.id = "root";
  mistyped.root.children.back().edges[1].target = "root";
  EXPECT_EQ(code_of(mistyped), Errc::DanglingEdge);
}

TEST(Validate, RejectsWrongEdgeCount) {
  Model m = ModelBuilder(Metatype::Process, "P").add("", Metatype::Task, "t", "t").build();
  Element flow;
  flow.type = Metatype::SequenceFlow;
  flow.edges = {{EdgeRole::Target, "t"}};
  m.root.children.push_back(flow);
  EXPECT_EQ(code_of(m), Errc::MalformedDocument);
}

TEST(Validate, ErrorMessageNamesCategory) {
  try {
    ModelBuilder(Metatype::Process, "P").add("", Metatype::Task, "", "t").build();
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::MissingName);
    EXPECT_EQ(std::string(e.what()).rfind("MissingName", 0), 0u);
  }
}

TEST(ModelIndex, PreorderWithResolvedEndpoints) {
  const Model m = ModelBuilder(Metatype::Process, "Order", "o")
                      .add("o", Metatype::StartEvent, "", "s")
                      .add("o", Metatype::SubProcess, "Sub", "sub")
                      .add("sub", Metatype::Task, "T", "t")
                      .flow("o", "f", "s", "t")
                      .build();
  const ModelIndex idx(m);
  ASSERT_EQ(idx.size(), 5u);
  EXPECT_EQ(idx.name(2), "Sub");
  EXPECT_EQ(idx.name(3), "T");
  EXPECT_EQ(idx[3].parent, 2);
  EXPECT_EQ(idx[3].depth, 2);
  EXPECT_EQ(idx.type(4), Metatype::SequenceFlow);
  EXPECT_EQ(idx.endpoint(4, EdgeRole::Source), 1);
  EXPECT_EQ(idx.endpoint(4, EdgeRole::Target), 3);
  EXPECT_EQ(idx.endpoint(3, EdgeRole::Target), kNoNode);
  EXPECT_EQ(idx.find_id("sub"), 2);
  EXPECT_EQ(idx.find_id("nope"), kNoNode);
  EXPECT_EQ(idx.route(3), (std::vector<int>{1, 0}));
  EXPECT_TRUE(idx.contains(2, 3));
  EXPECT_TRUE(idx.contains(3, 3));
  EXPECT_FALSE(idx.contains(3, 2));
}

} // namespace
} // namespace mmc
