#include <filesystem>

#include "doctest.h"
#include "vocemerge/error.hpp"
#include "vocemerge/io.hpp"
#include "vocemerge/ontology.hpp"
#include "vocemerge/rng.hpp"

using namespace vocemerge;

namespace {

std::string tempFile(const std::string& name, const std::string& content) {
  auto path = (std::filesystem::temp_directory_path() / name).string();
  writeTextFile(path, content);
  return path;
}

Ontology animalOntology() {
  return Ontology::fromEntities(
      {{"animal", "animal", ""}, {"dog", "dog", "animal"}, {"cat", "cat", "animal"}},
      {"animal"}, {{"animal", "animal"}, {"dog", "dog"}, {"cat", "cat"}});
}

// Random forest over k entities; parent of node i is one of 0..i-1 or none.
Ontology randomForest(int k, Rng& rng) {
  std::vector<Entity> entities;
  for (int i = 0; i < k; ++i) {
    std::string id = "e" + std::to_string(i);
    std::string parent;
    if (i > 0 && rng.uniform() < 0.8) {
      parent = "e" + std::to_string(rng.uniformInt(i));
    }
    entities.push_back({id, id, parent});
  }
  return Ontology::fromEntities(entities, {}, {});
}

}  // namespace

TEST_CASE("load parses a minimal forest") {
  auto ontoPath = tempFile("onto_min.jsonl",
                           "{\"id\":\"animal\",\"name\":\"Animal\",\"parent\":null}\n"
                           "{\"id\":\"dog\",\"name\":\"Dog\",\"parent\":\"animal\"}\n"
                           "{\"id\":\"cat\",\"name\":\"Cat\",\"parent\":\"animal\"}\n");
  auto o = Ontology::load(ontoPath, "");
  CHECK(o.entities().size() == 3);
  CHECK(o.canonicalName("dog") == "dog");  // case-folded at load
  CHECK(o.children("animal").size() == 2);
  CHECK(o.children("dog").empty());
}

TEST_CASE("load rejects a self-loop with the offending id") {
  auto path = tempFile("onto_loop.jsonl",
                       "{\"id\":\"dog\",\"name\":\"dog\",\"parent\":\"dog\"}\n");
  try {
    Ontology::load(path, "");
    FAIL("expected cycle error");
  } catch (const VocabError& e) {
    CHECK(e.code() == ErrorCode::Cycle);
    CHECK(std::string(e.what()).find("dog") != std::string::npos);
  }
}

TEST_CASE("load rejects a dangling parent") {
  auto path = tempFile("onto_dangling.jsonl",
                       "{\"id\":\"dog\",\"name\":\"dog\",\"parent\":\"x9\"}\n");
  try {
    Ontology::load(path, "");
    FAIL("expected dangling-parent error");
  } catch (const VocabError& e) {
    CHECK(e.code() == ErrorCode::DanglingParent);
    CHECK(std::string(e.what()).find("x9") != std::string::npos);
  }
}

TEST_CASE("load reports parse errors with line numbers") {
  auto path = tempFile("onto_bad.jsonl",
                       "{\"id\":\"a\",\"name\":\"a\",\"parent\":null}\n"
                       "not json\n");
  try {
    Ontology::load(path, "");
    FAIL("expected parse error");
  } catch (const VocabError& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("lexicon validation catches unknown entities") {
  auto ontoPath = tempFile("onto_lex.jsonl", "{\"id\":\"dog\",\"name\":\"dog\",\"parent\":null}\n");
  auto lexPath = tempFile("lex_bad.tsv", "dog\tmissing\n");
  CHECK_THROWS_AS(Ontology::load(ontoPath, lexPath), VocabError);
}

TEST_CASE("isSubclass is reflexive and follows parent chains") {
  auto o = animalOntology();
  CHECK(o.isSubclass("dog", "dog"));
  CHECK(o.isSubclass("dog", "animal"));
  CHECK_FALSE(o.isSubclass("animal", "dog"));
  CHECK_THROWS_AS(o.isSubclass("dog", "nope"), VocabError);
}

TEST_CASE("restrictToPhysical keeps descendants of physical roots") {
  auto o = Ontology::fromEntities({{"physical_object", "physical object", ""},
                                   {"dog", "dog", "physical_object"},
                                   {"freedom", "freedom", ""}},
                                  {"physical_object"}, {});
  CHECK(o.restrictToPhysical({"dog", "freedom"}) == std::set<std::string>{"dog"});
  CHECK(o.restrictToPhysical({}) == std::set<std::string>{});
  CHECK(o.restrictToPhysical({"physical_object"}) == std::set<std::string>{"physical_object"});
}

TEST_CASE("nearestAnnotatedAncestor walks to the closest annotated ancestor") {
  auto o = Ontology::fromEntities({{"animal", "animal", ""},
                                   {"mammal", "mammal", "animal"},
                                   {"marine_mammal", "marine mammal", "mammal"},
                                   {"cetacea", "cetacea", "marine_mammal"},
                                   {"dolphin", "dolphin", "cetacea"}},
                                  {"animal"}, {});
  auto hit = o.nearestAnnotatedAncestor("dolphin", {"mammal", "animal"});
  REQUIRE(hit.has_value());
  CHECK(*hit == "mammal");
  CHECK_FALSE(o.nearestAnnotatedAncestor("animal", {"mammal"}).has_value());
  auto parentHit = o.nearestAnnotatedAncestor("dolphin", {"cetacea"});
  REQUIRE(parentHit.has_value());
  CHECK(*parentHit == "cetacea");
}

TEST_CASE("subclass relation is a partial order on random forests") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto o = randomForest(10, rng);
    std::vector<std::string> ids;
    for (const auto& [id, e] : o.entities()) ids.push_back(id);
    for (const auto& a : ids) {
      CHECK(o.isSubclass(a, a));
      for (const auto& b : ids) {
        if (a != b && o.isSubclass(a, b)) CHECK_FALSE(o.isSubclass(b, a));
        for (const auto& c : ids) {
          if (o.isSubclass(a, b) && o.isSubclass(b, c)) CHECK(o.isSubclass(a, c));
        }
      }
    }
  }
}

TEST_CASE("restrictToPhysical is idempotent on random sets") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto o = randomForest(12, rng);
    std::set<std::string> sample;
    for (const auto& [id, e] : o.entities()) {
      if (rng.uniform() < 0.5) sample.insert(id);
    }
    auto once = o.restrictToPhysical(sample);
    CHECK(o.restrictToPhysical(once) == once);
  }
}

TEST_CASE("nearestAnnotatedAncestor never returns the entity itself") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    auto o = randomForest(12, rng);
    std::set<std::string> annotated;
    for (const auto& [id, e] : o.entities()) {
      if (rng.uniform() < 0.5) annotated.insert(id);
    }
    for (const auto& [id, e] : o.entities()) {
      auto hit = o.nearestAnnotatedAncestor(id, annotated);
      if (hit) {
        CHECK(*hit != id);
        CHECK(o.isSubclass(id, *hit));
      }
    }
  }
}
