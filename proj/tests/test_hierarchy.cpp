#include <algorithm>
#include <set>

#include "chartdoc/errors.hpp"
#include "chartdoc/hierarchy.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace chartdoc;
using chartdoc_test::data_path;

namespace {

// A small DAG with a spliceable chain (murid has the single child mouse),
// plus siblings so the surviving chain nodes keep two children each.
std::vector<EntityHierarchy::Edge> chain_dag() {
  return {
      {"mouse", {"murid"}},
      {"murid", {"rodent"}},
      {"rat", {"rodent"}},
      {"rodent", {"mammal"}},
      {"canine", {"mammal"}},
      {"dog", {"canine"}},
      {"wolf", {"canine"}},
      {"mammal", {"vertebrate"}},
      {"fish", {"vertebrate"}},
      {"trout", {"fish"}},
      {"carp", {"fish"}},
  };
}

}  // namespace

TEST_CASE("chain splicing removes single-child internal nodes") {
  EntityHierarchy h = EntityHierarchy::build(chain_dag());
  CHECK_FALSE(h.contains("murid"));  // spliced: murid -> mouse becomes direct
  CHECK(h.node("mouse").parent == "rodent");
  CHECK(h.node("rodent").parent == "mammal");
  CHECK(h.node("mammal").parent == "vertebrate");
  for (const auto& [name, n] : h.nodes()) {
    INFO("node ", name);
    CHECK(n.children.size() != 1);
  }
  auto [parent, grandparent] = h.ancestors("mouse");
  CHECK(parent == "rodent");
  CHECK(grandparent == "mammal");
}

TEST_CASE("splicing runs to a fixed point over stacked chains") {
  // a -> b -> c -> d -> leaf, where b, c, d each have one child.
  std::vector<EntityHierarchy::Edge> dag = {
      {"leaf", {"d"}}, {"d", {"c"}},      {"c", {"b"}},
      {"b", {"a"}},    {"other", {"a"}},
  };
  EntityHierarchy h = EntityHierarchy::build(dag);
  CHECK(h.size() == 3);  // a, leaf, other
  CHECK(h.node("leaf").parent == "a");
  CHECK_FALSE(h.contains("b"));
  CHECK_FALSE(h.contains("c"));
  CHECK_FALSE(h.contains("d"));
}

TEST_CASE("multi-parent nodes keep the lexicographically smallest parent") {
  std::vector<EntityHierarchy::Edge> dag = {
      {"tomato", {"vegetable", "fruit"}},
      {"carrot", {"vegetable"}},
      {"beet", {"vegetable"}},
      {"apple", {"fruit"}},
      {"pear", {"fruit"}},
      {"fruit", {"produce"}},
      {"vegetable", {"produce"}},
  };
  EntityHierarchy h = EntityHierarchy::build(dag);
  CHECK(h.node("tomato").parent == "fruit");
  const auto& veg = h.node("vegetable").children;
  CHECK(std::find(veg.begin(), veg.end(), "tomato") == veg.end());
}

TEST_CASE("dropped multi-parent edges trigger a re-splice") {
  // After "shared" resolves to parent "a", node "b" is left with a single
  // child and must be spliced out.
  std::vector<EntityHierarchy::Edge> dag = {
      {"shared", {"a", "b"}}, {"x", {"a"}},    {"only", {"b"}},
      {"a", {"root"}},        {"b", {"root"}},
  };
  EntityHierarchy h = EntityHierarchy::build(dag);
  CHECK(h.node("shared").parent == "a");
  CHECK_FALSE(h.contains("b"));
  CHECK(h.node("only").parent == "root");
}

TEST_CASE("cycles and self edges are rejected") {
  CHECK_THROWS_AS(EntityHierarchy::build({{"a", {"b"}}, {"b", {"a"}}}),
                  CycleDetected);
  CHECK_THROWS_AS(EntityHierarchy::build({{"a", {"a"}}}), CycleDetected);
  CHECK_THROWS_AS(
      EntityHierarchy::build({{"a", {"b"}}, {"b", {"c"}}, {"c", {"a"}}}),
      CycleDetected);
}

TEST_CASE("children are ordered lexicographically and roots sorted") {
  EntityHierarchy h = EntityHierarchy::build(chain_dag());
  for (const auto& [name, n] : h.nodes())
    CHECK(std::is_sorted(n.children.begin(), n.children.end()));
  CHECK(std::is_sorted(h.roots().begin(), h.roots().end()));
}

TEST_CASE("serialize round-trips through parse byte-identically") {
  EntityHierarchy h = EntityHierarchy::build(chain_dag());
  std::string text = h.serialize();
  EntityHierarchy back = EntityHierarchy::parse(text);
  CHECK(back.serialize() == text);
  CHECK(back.size() == h.size());
  CHECK(back.roots() == h.roots());
}

TEST_CASE("parse rejects dangling references") {
  CHECK_THROWS_AS(EntityHierarchy::parse("a\t-\tb,c\nb\ta\t\n"),
                  InvariantViolation);
  CHECK_THROWS_AS(EntityHierarchy::parse("a\tmissing\t\n"), InvariantViolation);
  CHECK_THROWS_AS(EntityHierarchy::parse("bad line without tabs\n"), ParseError);
}

TEST_CASE("ancestors rejects roots and depth-1 nodes") {
  EntityHierarchy h = EntityHierarchy::build(chain_dag());
  CHECK_THROWS_AS(h.ancestors("vertebrate"), RootHasNoAncestors);
  CHECK_THROWS_AS(h.ancestors("mammal"), RootHasNoAncestors);
  CHECK_THROWS_AS(h.ancestors("nope"), UnknownEntity);
}

TEST_CASE("sample_entities draws the requested shape deterministically") {
  EntityHierarchy h =
      EntityHierarchy::build_from_edge_file(data_path("hypernyms.txt"));
  Rng a(123), b(123);
  EntitySample s1 = h.sample_entities(a, 2, 3);
  EntitySample s2 = h.sample_entities(b, 2, 3);
  CHECK(s1.grandparent == s2.grandparent);
  CHECK(s1.entities == s2.entities);
  CHECK(s1.parents.size() == 2);
  CHECK(s1.entities.size() == 6);
  std::set<std::string> uniq(s1.entities.begin(), s1.entities.end());
  CHECK(uniq.size() == 6);
  for (const auto& e : s1.entities) {
    auto [p, g] = h.ancestors(e);
    CHECK(s1.classes.at(e) == std::make_pair(p, g));
    CHECK(g == s1.grandparent);
  }
}

TEST_CASE("sample_entities honors a fixed grandparent and rejects bad ones") {
  EntityHierarchy h =
      EntityHierarchy::build_from_edge_file(data_path("hypernyms.txt"));
  Rng rng(5);
  EntitySample s = h.sample_entities(rng, 2, 2, std::string("mammal"));
  CHECK(s.grandparent == "mammal");
  CHECK_THROWS_AS(h.sample_entities(rng, 2, 2, std::string("unknown")),
                  UnknownEntity);
  CHECK_THROWS_AS(h.sample_entities(rng, 50, 2, std::string("mammal")),
                  InsufficientEntities);
  CHECK_THROWS_AS(h.sample_entities(rng, 0, 2), InvalidInput);
}

TEST_CASE("the shipped taxonomy builds into a clean tree") {
  EntityHierarchy h =
      EntityHierarchy::build_from_edge_file(data_path("hypernyms.txt"));
  CHECK(h.size() >= 500);
  for (const auto& [name, n] : h.nodes()) {
    INFO("node ", name);
    CHECK(n.children.size() != 1);
    if (n.parent) {
      const auto& siblings = h.node(*n.parent).children;
      CHECK(std::find(siblings.begin(), siblings.end(), name) != siblings.end());
    }
  }
  // The example entities used throughout the question fixtures exist.
  auto [p1, g1] = h.ancestors("mouse");
  CHECK(p1 == "rodent");
  CHECK(g1 == "mammal");
  CHECK(h.contains("sunglass"));
}
