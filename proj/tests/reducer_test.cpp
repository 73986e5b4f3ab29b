#include <gtest/gtest.h>

#include "platec/emitters.hpp"
#include "platec/reducer.hpp"
#include "platec/translator.hpp"
#include "support.hpp"

namespace platec {
namespace {

using testing::fixture;
using testing::fixture_hints;

ERModel raw(const std::string& name) { return translate(atomicize(fixture(name))); }

EntityType plate(const std::string& name) { return {name, EntityKind::plate, {name}, {"ID"}, {}}; }
EntityType assoc(const std::string& name, std::vector<Attribute> attrs = {}) {
  return {name, EntityKind::association, {}, {}, std::move(attrs)};
}
AssociationLink lnk(const std::string& a, const std::string& t, bool identifying) {
  return {a, t, identifying, std::nullopt, Cardinality::many(), Cardinality::one()};
}

// Two ternary A-B-C style associations, each identified only by A and
// pointing at B; the merges leave two A--B relationships.
ERModel twin_ternary() {
  ERModel m;
  m.name = "Twins";
  m.entities = {plate("A"), plate("B"), assoc("R"), assoc("S")};
  m.links = {lnk("R", "A", true), lnk("R", "B", false), lnk("S", "A", true), lnk("S", "B", false)};
  return m;
}

std::multiset<std::pair<std::string, std::string>> attribute_multiset(const ERModel& m) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (const auto& e : m.entities) {
    for (const auto& a : e.attrs) out.emplace(a.name, a.source);
  }
  return out;
}

TEST(Hints, Parse) {
  auto h = EquivalenceHints::parse("# comment\n\nequivalent A.B C.D  # trailing\nequivalent x y z\n");
  ASSERT_EQ(h.classes.size(), 2u);
  EXPECT_EQ(h.classes[0], (std::vector<std::string>{"A.B", "C.D"}));
  EXPECT_EQ(h.classes[1].size(), 3u);
  EXPECT_FALSE(h.assume_all);
  EXPECT_TRUE(EquivalenceHints::parse("").classes.empty());
}

TEST(Hints, ParseErrors) {
  try {
    EquivalenceHints::parse("equivalent a b\n  same a b\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location(), (SourceLocation{2, 3}));
  }
  EXPECT_THROW(EquivalenceHints::parse("equivalent a\n"), SyntaxError);
}

TEST(IsDegenerate, LdaRaw) {
  ERModel m = raw("lda");
  EXPECT_TRUE(is_degenerate(m, *m.find_entity("D-T-T")));
  EXPECT_TRUE(is_degenerate(m, *m.find_entity("D-T-W")));
  EXPECT_FALSE(is_degenerate(m, *m.find_entity("D-T")));
  EXPECT_FALSE(is_degenerate(m, *m.find_entity("T-W")));
  EXPECT_FALSE(is_degenerate(m, *m.find_entity("Token")));
}

TEST(MergeDegenerate, DTTFoldsIntoToken) {
  ERModel m = raw("lda");
  ValidationReport r;
  merge_degenerate_association(m, "D-T-T", r);
  EXPECT_EQ(m.find_entity("D-T-T"), nullptr);
  EXPECT_TRUE(m.links_of("D-T-T").empty());
  ASSERT_EQ(m.direct_rels.size(), 2u);
  const DirectRelationship* topic = nullptr;
  for (const auto& d : m.direct_rels) {
    if (d.b == "Topic") topic = &d;
  }
  ASSERT_NE(topic, nullptr);
  EXPECT_EQ(topic->a, "Token");
  EXPECT_EQ(topic->card_a, Cardinality::one());
  EXPECT_EQ(topic->card_b, Cardinality::many());
  EXPECT_EQ(topic->provenance, std::vector<std::string>{"D-T-T.Topic"});
  EXPECT_TRUE(r.empty());
}

TEST(MergeDegenerate, TwoIdentifyingLinksIsNoop) {
  ERModel m = raw("lda");
  ERModel before = m;
  ValidationReport r;
  merge_degenerate_association(m, "D-T", r);
  merge_degenerate_association(m, "Nope", r);
  EXPECT_EQ(m, before);
}

TEST(MergeDegenerate, AttributeClashIsRenamed) {
  ERModel m;
  m.entities = {plate("A"), plate("B"), assoc("A-B", {{"x", Domain::real, "x_ab"}})};
  m.entities[0].attrs.push_back({"x", Domain::real, "x_a"});
  m.links = {lnk("A-B", "A", true), lnk("A-B", "B", false)};
  ValidationReport r;
  merge_degenerate_association(m, "A-B", r);
  EXPECT_EQ(r.count("ATTR_RENAMED"), 1u);
  ASSERT_NE(m.find_entity("A")->find_attr("A_B_x"), nullptr);
  EXPECT_EQ(m.find_entity("A")->find_attr("A_B_x")->source, "x_ab");
  EXPECT_EQ(m.find_entity("A")->find_attr("x")->source, "x_a");
}

TEST(Reduce, LdaWithHints) {
  auto res = reduce(raw("lda"), fixture_hints("lda"));
  const ERModel& m = res.model;
  EXPECT_TRUE(res.report.empty());
  EXPECT_EQ(m.stage, ErmStage::reduced);
  std::vector<std::string> names;
  for (const auto& e : m.entities) names.push_back(e.name);
  EXPECT_EQ(names, (std::vector<std::string>{"D-T", "Document", "T-W", "Token", "Topic", "Word"}));
  ASSERT_EQ(m.direct_rels.size(), 3u);
  const auto& merged = m.direct_rels[0];
  EXPECT_EQ(merged.name, "D-T-T.Document+D-T-W.Document");
  EXPECT_EQ(merged.a, "Token");
  EXPECT_EQ(merged.b, "Document");
  EXPECT_EQ(merged.card_a, Cardinality::one());
  EXPECT_EQ(merged.card_b, Cardinality::many(1));
  EXPECT_TRUE(check_wellformed(m).empty());
}

TEST(Reduce, LdaWithoutHintsWarns) {
  auto res = reduce(raw("lda"), {});
  EXPECT_EQ(res.report.count("UNRESOLVED_DUPLICATE"), 1u);
  EXPECT_TRUE(res.report.ok());
  EXPECT_EQ(res.model.stage, ErmStage::reduced_with_warnings);
  EXPECT_EQ(res.model.direct_rels.size(), 4u);
  EXPECT_EQ(check_wellformed(res.model).count("DUPLICATE_RELATIONSHIP"), 1u);
}

TEST(Reduce, NoAssociationsUnchangedButStaged) {
  ERModel m = raw("vector");
  auto res = reduce(m, {});
  m.stage = ErmStage::reduced;
  m.canonicalize();
  EXPECT_EQ(res.model, m);
  EXPECT_TRUE(res.report.empty());
}

TEST(Reduce, EmptyModel) {
  ERModel empty;
  auto res = reduce(empty, {});
  EXPECT_TRUE(res.model.entities.empty());
  EXPECT_TRUE(res.report.empty());
  EXPECT_TRUE(check_wellformed(empty).empty());
}

TEST(Reduce, TwinTernaryAssumeAllMergesToOne) {
  EquivalenceHints all;
  all.assume_all = true;
  auto res = reduce(twin_ternary(), all);
  ASSERT_EQ(res.model.direct_rels.size(), 1u);
  EXPECT_EQ(res.model.direct_rels[0].name, "R.B+S.B");
  EXPECT_EQ(res.model.direct_rels[0].provenance, (std::vector<std::string>{"R.B", "S.B"}));
  EXPECT_EQ(res.model.stage, ErmStage::reduced);
  EXPECT_EQ(res.model.entities.size(), 2u);
}

TEST(MergeDuplicates, DirectRandSNamedByConcatenation) {
  ERModel m;
  m.entities = {plate("A"), plate("B")};
  m.direct_rels = {{"S", "A", "B", Cardinality::one(), Cardinality::many(), {"S"}},
                   {"R", "B", "A", Cardinality::many(), Cardinality::one(), {"R"}}};
  EquivalenceHints all;
  all.assume_all = true;
  ValidationReport r;
  merge_duplicate_relationships(m, all, r);
  ASSERT_EQ(m.direct_rels.size(), 1u);
  EXPECT_EQ(m.direct_rels[0].name, "R+S");
  EXPECT_TRUE(r.empty());
}

TEST(MergeDuplicates, EndpointDistinctUntouched) {
  ERModel m;
  m.entities = {plate("A"), plate("B"), plate("C")};
  m.direct_rels = {{"R", "A", "B", Cardinality::one(), Cardinality::many(), {"R"}},
                   {"S", "A", "C", Cardinality::one(), Cardinality::many(), {"S"}},
                   {"T", "A", "B", Cardinality::one(), Cardinality::many(1), {"T"}}};
  ERModel before = m;
  EquivalenceHints all;
  all.assume_all = true;
  ValidationReport r;
  merge_duplicate_relationships(m, all, r);
  EXPECT_EQ(m.direct_rels, before.direct_rels);
  EXPECT_TRUE(r.empty());
}

TEST(MergeDuplicates, HintMismatchAndUnknown) {
  ERModel m;
  m.entities = {plate("A"), plate("B"), plate("C")};
  m.direct_rels = {{"R", "A", "B", Cardinality::one(), Cardinality::many(), {"R"}},
                   {"S", "A", "C", Cardinality::one(), Cardinality::many(), {"S"}}};
  ValidationReport r;
  merge_duplicate_relationships(m, EquivalenceHints::parse("equivalent R S\nequivalent R Q\n"), r);
  EXPECT_TRUE(r.has("HINT_MISMATCH"));
  EXPECT_TRUE(r.has("UNKNOWN_RELATIONSHIP"));
  EXPECT_EQ(m.direct_rels.size(), 2u);
  auto res = reduce(m, EquivalenceHints::parse("equivalent R S\n"));
  EXPECT_FALSE(res.report.ok());
  EXPECT_EQ(res.model.stage, ErmStage::reduced_with_warnings);
}

TEST(CheckWellformed, RawLdaFlagsTwoDegenerates) {
  auto r = check_wellformed(raw("lda"));
  EXPECT_EQ(r.count("DEGENERATE_ASSOCIATION"), 2u);
  EXPECT_EQ(r.error_count(), 2u);
}

TEST(CheckWellformed, Violations) {
  ERModel m;
  m.entities = {plate("A"), plate("A"), {"Global", EntityKind::global, {}, {"ID"}, {}},
                {"Global2", EntityKind::global, {}, {"ID"}, {}}, assoc("K")};
  m.entities[0].attrs.push_back({"b_id", Domain::integer, "b"});
  m.entities[0].attrs.push_back({"AID", Domain::integer, "c"});
  m.links = {lnk("K", "A", false), lnk("K", "Missing", true)};
  m.direct_rels = {{"R", "A", "Nowhere", Cardinality::one(), Cardinality::many(), {"R"}}};
  auto r = check_wellformed(m);
  EXPECT_TRUE(r.has("DUPLICATE_ENTITY"));
  EXPECT_TRUE(r.has("MULTIPLE_GLOBAL"));
  EXPECT_EQ(r.count("FOREIGN_KEY_ATTR"), 2u);
  EXPECT_EQ(r.count("DANGLING_LINK"), 2u);
}

TEST(CheckWellformed, KeylessAssociation) {
  ERModel m;
  m.entities = {plate("A"), plate("B"), assoc("A-B")};
  m.links = {lnk("A-B", "A", false), lnk("A-B", "B", false)};
  EXPECT_TRUE(check_wellformed(m).has("KEYLESS_ASSOCIATION"));
}

TEST(ReduceProperties, CorpusWellformedAndIdempotent) {
  for (const auto& name : testing::fixture_names()) {
    SCOPED_TRACE(name);
    ERModel r = raw(name);
    auto hints = fixture_hints(name);
    auto once = reduce(r, hints);
    EXPECT_TRUE(check_wellformed(once.model).empty());
    EXPECT_EQ(reduce(once.model, hints).model, once.model);
    EXPECT_EQ(attribute_multiset(once.model), attribute_multiset(r));
  }
}

TEST(ReduceProperties, RandomModels) {
  testing::ModelGenerator gen(77);
  EquivalenceHints all;
  all.assume_all = true;
  for (int i = 0; i < 500; ++i) {
    ERModel r = translate(atomicize(gen.next_valid()));
    for (bool assume : {true, false}) {
      EquivalenceHints h = assume ? all : EquivalenceHints{};
      auto once = reduce(r, h);
      EXPECT_EQ(reduce(once.model, h).model, once.model);
      EXPECT_EQ(attribute_multiset(once.model), attribute_multiset(r));
      EXPECT_EQ(once.model.plain_entity_count(), r.plain_entity_count());
      for (const auto& e : r.entities) {
        if (!e.is_association()) EXPECT_NE(once.model.find_entity(e.name), nullptr) << e.name;
      }
      if (assume) {
        EXPECT_TRUE(check_wellformed(once.model).empty()) << emit_json(once.model);
        EXPECT_EQ(once.model.stage, ErmStage::reduced);
      }
    }
  }
}

}  // namespace
}  // namespace platec
