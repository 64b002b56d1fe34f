#include <doctest.h>

#include <sstream>

#include "gesbn/errors.hpp"
#include "gesbn/graph.hpp"
#include "gesbn/io.hpp"
#include "gesbn/oracle.hpp"
#include "test_oracles.hpp"

using namespace gesbn;

TEST_CASE("class encodings") {
  const VariableSpec spec = numbered_spec({2, 2, 2, 2});
  const Cpdag c = dag_to_cpdag(Dag::from_edges(4, {{0, 2}, {1, 2}, {2, 3}}));
  CHECK(encode_class(c, spec) == "X1 -> X3\nX2 -> X3\nX3 -> X4\n");
  CHECK(encode_class_compact(c, spec) == "X1->X3;X2->X3;X3->X4");

  const Cpdag chain = dag_to_cpdag(Dag::from_edges(4, {{0, 1}, {1, 2}}));
  CHECK(encode_class(chain, spec) == "X1 -- X2\nX2 -- X3\n");
  CHECK(encode_class(Cpdag(4), spec).empty());
  CHECK(encode_class_compact(Cpdag(4), spec).empty());
}

TEST_CASE("class encodings round-trip for every 4-node class") {
  const VariableSpec spec({"a", "b", "c", "d"}, {2, 3, 2, 2});
  for (const Cpdag& c : enumerate_classes(4)) {
    CHECK(parse_class(encode_class(c, spec), spec) == c);
    CHECK(parse_class(encode_class_compact(c, spec), spec) == c);
    const Dag g = canonical_extension(c);
    CHECK(parse_dag(encode_dag(g, spec), spec) == g);
    CHECK(parse_class(encode_dag(g, spec), spec) == c);
  }
}

TEST_CASE("class parsing errors") {
  const VariableSpec spec = numbered_spec({2, 2, 2});
  CHECK_THROWS_AS(parse_class("X1 -> Q\n", spec), FormatError);
  CHECK_THROWS_AS(parse_class("X1 => X2\n", spec), FormatError);
  CHECK_THROWS_AS(parse_class("X1 -> X2\nX2 -> X3\nX3 -> X1\n", spec), StructureError);
  // Not completed: the chain would be compelled.
  CHECK_THROWS_AS(parse_class("X1 -> X2\nX2 -- X3\n", spec), StructureError);
  CHECK_THROWS_AS(parse_dag("X1 -- X2\n", spec), FormatError);
  CHECK(parse_class("# comment\n\nX1 -- X2\n", spec) == dag_to_cpdag(Dag::from_edges(3, {{0, 1}})));
}

TEST_CASE("dataset CSV") {
  const CategoricalDataset d = testing::random_dataset({2, 3, 4}, 40, 2);
  std::stringstream text;
  write_dataset_csv(text, d);
  CHECK(text.str().rfind("V0,V1,V2\n", 0) == 0);
  std::stringstream in1(text.str());
  CHECK(read_dataset_csv(in1, d.spec()) == d);

  std::stringstream in2(text.str());
  const CategoricalDataset inferred = read_dataset_csv(in2, std::nullopt);
  CHECK(inferred.records() == d.records());
  for (int v = 0; v < 3; ++v) CHECK(inferred.spec().card(v) == d.records().col(v).maxCoeff() + 1);

  std::stringstream empty("V0,V1\n");
  const CategoricalDataset none = read_dataset_csv(empty, std::nullopt);
  CHECK(none.rows() == 0);
  CHECK(none.spec().cards() == std::vector<int>{1, 1});
}

TEST_CASE("dataset CSV errors") {
  const VariableSpec spec({"A", "B"}, {2, 2});
  auto read = [&](const std::string& s, bool with_spec) {
    std::stringstream in(s);
    return read_dataset_csv(in, with_spec ? std::optional<VariableSpec>(spec) : std::nullopt);
  };
  CHECK_THROWS_AS(read("A,B\n0,2\n", true), FormatError);
  CHECK_THROWS_AS(read("A,C\n0,1\n", true), FormatError);
  CHECK_THROWS_AS(read("A,B\n0\n", false), FormatError);
  CHECK_THROWS_AS(read("A,B\n0,x\n", false), FormatError);
  CHECK_THROWS_AS(read("A,B\n0,-1\n", false), FormatError);
  CHECK_THROWS_AS(read("", false), FormatError);
  CHECK_THROWS_AS(read("A,A\n0,0\n", false), FormatError);
}

TEST_CASE("schema round-trip") {
  const VariableSpec spec({"X1", "X2", "H"}, {2, 3, 2});
  std::stringstream s;
  write_schema(s, spec);
  CHECK(read_schema(s) == spec);
  std::stringstream bad(R"({"variables":[{"name":"A","cardinality":0}]})");
  CHECK_THROWS(read_schema(bad));
}

TEST_CASE("model files round-trip") {
  for (const GoldStandard& tmpl : {gold_w(), gold_four_cycle()}) {
    for (const GoldStandard& m : {tmpl, with_sampled_parameters(tmpl, 10.0, {3, 0})}) {
      std::stringstream s;
      write_model(s, m);
      const std::string first = s.str();
      const GoldStandard back = read_model(s);
      CHECK(back.bn.structure == m.bn.structure);
      CHECK(back.bn.spec == m.bn.spec);
      CHECK(back.roles == m.roles);
      CHECK(back.selection_values == m.selection_values);
      REQUIRE(back.bn.cpts.size() == m.bn.cpts.size());
      for (std::size_t v = 0; v < m.bn.cpts.size(); ++v) CHECK(back.bn.cpts[v] == m.bn.cpts[v]);
      std::stringstream again;
      write_model(again, back);
      CHECK(again.str() == first);
    }
  }
}

TEST_CASE("model file errors") {
  auto read = [](const std::string& s) {
    std::stringstream in(s);
    return read_model(in);
  };
  CHECK_THROWS(read("{}"));
  CHECK_THROWS(read(R"({"version":2,"variables":[],"edges":[]})"));
  CHECK_THROWS(read(R"({"version":1,"variables":[{"name":"A","cardinality":2,"role":"observed"}],"edges":[["A","B"]]})"));
  CHECK_THROWS(read(R"({"version":1,"variables":[{"name":"A","cardinality":2,"role":"secret"}],"edges":[]})"));
  CHECK_THROWS(read(R"({"version":1,"variables":[{"name":"A","cardinality":2,"role":"observed"}],"edges":[],"cpts":[[0.5,0.6]]})"));
  CHECK_NOTHROW(read(R"({"version":1,"variables":[{"name":"A","cardinality":2,"role":"observed"}],"edges":[],"cpts":[[0.5,0.5]]})"));
}

TEST_CASE("joint CSV") {
  const JointTable p = testing::xor_joint();
  std::stringstream s;
  write_joint_csv(s, p);
  std::string header;
  std::getline(s, header);
  CHECK(header == "X,Y,W,probability");
  int rows = 0;
  for (std::string line; std::getline(s, line);) ++rows;
  CHECK(rows == 8);
}
