#include <gtest/gtest.h>

#include "platec/model_ast.hpp"
#include "support.hpp"

namespace platec {
namespace {

using testing::fixture;
using testing::fixture_names;

TEST(Parse, VectorFixture) {
  PlateModel m = fixture("vector");
  EXPECT_EQ(m.name, "Vector");
  ASSERT_EQ(m.index_sets.size(), 1u);
  ASSERT_EQ(m.variables.size(), 2u);
  ASSERT_EQ(m.edges.size(), 1u);
  EXPECT_EQ(m.edges[0].src, "alpha");
  EXPECT_EQ(m.edges[0].dst, "x");
  EXPECT_EQ(m.find_variable("x")->dims, std::vector<std::string>{"N"});
  EXPECT_TRUE(m.find_variable("alpha")->dims.empty());
  EXPECT_EQ(m.find_variable("alpha")->kind, VariableKind::hyper);
}

TEST(Parse, EmptyModel) {
  PlateModel m = parse("model Empty\n");
  EXPECT_EQ(m.name, "Empty");
  EXPECT_TRUE(m.index_sets.empty());
  EXPECT_TRUE(m.variables.empty());
  EXPECT_TRUE(m.edges.empty());
  EXPECT_TRUE(validate(m).empty());
}

TEST(Parse, LdaFixture) {
  PlateModel m = fixture("lda");
  EXPECT_EQ(m.index_sets.size(), 4u);
  EXPECT_EQ(m.variables.size(), 6u);
  EXPECT_EQ(m.edges.size(), 5u);
  const IndexSet* tokens = m.find_index("M");
  ASSERT_NE(tokens, nullptr);
  EXPECT_EQ(tokens->parent, "N");
  EXPECT_TRUE(tokens->nonempty);
  EXPECT_EQ(tokens->label, "Tokens");
  EXPECT_EQ(m.find_variable("z")->onehot_over, "K");
  EXPECT_EQ(m.find_variable("d")->kind, VariableKind::observed);
}

TEST(Parse, DefCarriesOpaqueExpressionAndUses) {
  PlateModel m = fixture("polyreg");
  const Variable* mu = m.find_variable("mu");
  ASSERT_NE(mu, nullptr);
  EXPECT_EQ(mu->kind, VariableKind::deterministic);
  ASSERT_TRUE(mu->transform);
  EXPECT_EQ(mu->transform->expression, "sum_k w_k * xp_k");
  EXPECT_EQ(mu->transform->uses, (std::vector<std::string>{"w", "xp"}));
}

TEST(Parse, SourceLocationsAreOneBased) {
  PlateModel m = parse("# header\nmodel M\n  index N \"Ns\"\nvar x : real[N] hidden\n");
  EXPECT_EQ(m.index_sets[0].location, (SourceLocation{3, 3}));
  EXPECT_EQ(m.variables[0].location, (SourceLocation{4, 1}));
}

TEST(ParseErrors, MissingHeader) {
  try {
    parse("index N\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location(), (SourceLocation{1, 1}));
    EXPECT_EQ(e.expected(), std::vector<std::string>{"'model'"});
  }
  EXPECT_THROW(parse(""), SyntaxError);
}

TEST(ParseErrors, ReportsColumnAndExpectedSet) {
  try {
    parse("model M\nvar x : float hidden\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location(), (SourceLocation{2, 9}));
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"'real'", "'bit'", "'int'"}));
  }
  try {
    parse("model M\nindex N\nvar x : real[N hidden\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location().line, 3);
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"','", "']'"}));
  }
}

TEST(ParseErrors, MalformedStatements) {
  EXPECT_THROW(parse("model M\nedge a b\n"), SyntaxError);
  EXPECT_THROW(parse("model M\nvar x : real deterministic\n"), SyntaxError);
  EXPECT_THROW(parse("model M\nindex N \"open\n"), SyntaxError);
  EXPECT_THROW(parse("model M\ndef y : real = uses x\n"), SyntaxError);
  EXPECT_THROW(parse("model M\ndef y : real = x uses\n"), SyntaxError);
  EXPECT_THROW(parse("model M\nmodel N\n"), SyntaxError);
  EXPECT_THROW(parse("model M\nvar x : bit[N] hidden onehot N\n"), SyntaxError);
  EXPECT_THROW(parse("model M\nfoo\n"), SyntaxError);
}

TEST(ParseErrors, DuplicateName) {
  try {
    parse("model M\nindex N\nvar N : real hidden\n");
    FAIL();
  } catch (const DuplicateName& e) {
    EXPECT_EQ(e.name(), "N");
    EXPECT_EQ(e.location().line, 3);
  }
}

TEST(Validate, LdaIsClean) { EXPECT_TRUE(validate(fixture("lda")).empty()); }

TEST(Validate, UndeclaredIndex) {
  auto r = validate(parse("model M\nvar x : real[Q] hidden\n"));
  EXPECT_TRUE(r.has("UNDECLARED_INDEX"));
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics[0].location, (SourceLocation{2, 1}));
}

TEST(Validate, OnehotOnRealVariable) {
  auto r = validate(parse("model M\nindex N\nindex K\nvar x : real[N,K] hidden onehot over K\n"));
  EXPECT_TRUE(r.has("ONEHOT_NOT_BIT"));
}

TEST(Validate, OnehotIndexOutsideDims) {
  auto r = validate(parse("model M\nindex N\nindex K\nvar x : bit[N] hidden onehot over K\n"));
  EXPECT_TRUE(r.has("ONEHOT_NOT_IN_DIMS"));
}

TEST(Validate, OnehotWithoutIntersection) {
  auto r = validate(parse("model M\nindex K\nvar z : bit[K] hidden onehot over K\n"));
  EXPECT_TRUE(r.has("ONEHOT_WITHOUT_INTERSECTION"));
}

TEST(Validate, NestingAndOnehotLeavingNoIdentifyingPlate) {
  auto r = validate(parse("model M\nindex N\nindex M in N\nvar pick : bit[M] hidden onehot over M\n"));
  EXPECT_TRUE(r.has("NO_IDENTIFYING_LINK"));
}

TEST(Validate, ParentProblems) {
  EXPECT_TRUE(validate(parse("model M\nindex A in Z\n")).has("UNDECLARED_INDEX"));
  EXPECT_TRUE(validate(parse("model M\nindex A in B\nindex B in A\nvar x : real[A] hidden\n")).has("PARENT_CYCLE"));
  EXPECT_TRUE(validate(parse("model M\nindex A in A\n")).has("PARENT_CYCLE"));
}

TEST(Validate, EdgesAndDependencies) {
  EXPECT_TRUE(validate(parse("model M\nvar a : real hidden\nedge a -> b\n")).has("UNDECLARED_VARIABLE"));
  EXPECT_TRUE(validate(parse("model M\ndef a : real = b uses b\n")).has("UNDECLARED_VARIABLE"));
  auto cyc = validate(parse("model M\nvar a : real hidden\nvar b : real hidden\nedge a -> b\nedge b -> a\n"));
  EXPECT_TRUE(cyc.has("EDGE_CYCLE"));
  auto via_def = validate(parse("model M\nvar a : real hidden\ndef b : real = a uses a\nedge b -> a\n"));
  EXPECT_TRUE(via_def.has("EDGE_CYCLE"));
  auto dup = validate(parse("model M\nvar a : real hidden\nvar b : real hidden\nedge a -> b\nedge a -> b\n"));
  EXPECT_TRUE(dup.ok());
  EXPECT_TRUE(dup.has("DUPLICATE_EDGE"));
}

TEST(Validate, HandBuiltInvariantViolations) {
  PlateModel m = parse("model M\nvar a : real hidden\n");
  m.variables.push_back(m.variables[0]);
  m.variables[0].kind = VariableKind::deterministic;
  auto r = validate(m);
  EXPECT_TRUE(r.has("DUPLICATE_NAME"));
  EXPECT_TRUE(r.has("TRANSFORM_KIND_MISMATCH"));
}

TEST(Validate, UnusedIndexIsWarning) {
  auto r = validate(parse("model M\nindex N\nindex K\nvar x : real[K] hidden\n"));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.count("UNUSED_INDEX"), 1u);
}

TEST(Validate, SquareMatrixIsAllowed) {
  EXPECT_TRUE(validate(fixture("selfrel")).empty());
}

TEST(Validate, IsPureAndDeterministic) {
  testing::ModelGenerator gen(7);
  for (int i = 0; i < 200; ++i) {
    PlateModel m = gen.next();
    PlateModel copy = m;
    auto r1 = validate(m);
    auto r2 = validate(copy);
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(m, copy);
  }
}

TEST(Print, RoundTripOverCorpus) {
  for (const auto& name : fixture_names()) {
    SCOPED_TRACE(name);
    PlateModel m = fixture(name);
    std::string canon = print(m);
    PlateModel again = parse(canon);
    EXPECT_EQ(print(again), canon);
    EXPECT_EQ(strip_locations(again), strip_locations(m));
  }
}

TEST(Print, RoundTripOverRandomModels) {
  testing::ModelGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    PlateModel m = gen.next();
    EXPECT_EQ(strip_locations(parse(print(m))), m) << print(m);
  }
}

TEST(Render, DiagnosticLine) {
  Diagnostic d{Severity::error, "UNDECLARED_INDEX", "variable 'x' uses undeclared index 'Q'", {2, 1}};
  EXPECT_EQ(render(d, "m.bpn"), "m.bpn:2:1: error UNDECLARED_INDEX variable 'x' uses undeclared index 'Q'");
  EXPECT_NE(render(d, "m.bpn", true).find("\x1b["), std::string::npos);
}

}  // namespace
}  // namespace platec
