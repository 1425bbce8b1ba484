#include "doctest.h"
#include "oracles.hpp"
#include "vocemerge/normalizer.hpp"
#include "vocemerge/rng.hpp"
#include "vocemerge/simgen.hpp"
#include "vocemerge/util.hpp"

using namespace vocemerge;

namespace {

Ontology wordsOntology() {
  std::vector<Entity> entities = {
      {"physical_object", "physical object", ""},
      {"dog", "dog", "physical_object"},
      {"glove", "glove", "physical_object"},
      {"gloss", "gloss", "physical_object"},
      {"house", "house", "physical_object"},
      {"bread", "bread", "physical_object"},
      {"cheese", "cheese", "physical_object"},
      {"lion", "lion", "physical_object"},
      {"sea_lion", "sea lion", "physical_object"},
      {"hair_bun", "hair bun", "physical_object"},
      {"bread_bun", "bread bun", "physical_object"},
      {"freedom", "freedom", ""},
  };
  std::vector<std::pair<std::string, std::string>> lexicon = {
      {"dog", "dog"},        {"glove", "glove"},   {"gloss", "gloss"},
      {"house", "house"},    {"bread", "bread"},   {"cheese", "cheese"},
      {"lion", "lion"},      {"sea lion", "sea_lion"}, {"bun", "hair_bun"},
      {"bun", "bread_bun"},  {"freedom", "freedom"},
  };
  return Ontology::fromEntities(entities, {"physical_object"}, lexicon,
                                {{"glove", 50}, {"gloss", 3}, {"house", 10}});
}

PointAnnotation annot(const std::string& raw) {
  PointAnnotation p;
  p.pointId = "p1";
  p.imageId = "img1";
  p.annotatorId = "a1";
  p.x = 0.5;
  p.y = 0.5;
  p.raw = raw;
  return p;
}

}  // namespace

TEST_CASE("edit distance matches the reference implementation") {
  Rng rng(3);
  auto randomWord = [&](size_t maxLen) {
    size_t len = 1 + rng.uniformInt(maxLen);
    std::string s;
    for (size_t i = 0; i < len; ++i) s.push_back('a' + static_cast<char>(rng.uniformInt(4)));
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    std::string a = randomWord(8), b = randomWord(8);
    CHECK(damerauLevenshtein(a, b) == oracles::editDistance(a, b));
  }
  CHECK(damerauLevenshtein("doog", "dog") == 1);
  CHECK(damerauLevenshtein("abc", "acb") == 1);  // transposition is one edit
}

TEST_CASE("correctSpelling fixes doog and keeps valid words") {
  auto onto = wordsOntology();
  CHECK(correctSpelling("doog", onto) == "dog");
  CHECK(correctSpelling("dog", onto) == "dog");
  CHECK(correctSpelling("DOG ", onto) == "dog");
}

TEST_CASE("correctSpelling breaks distance ties by frequency") {
  auto onto = wordsOntology();
  // glove, gloss and house are all two edits from glouse; glove has the
  // highest frequency. Verified against exhaustive distances over the lexicon.
  int dGlove = oracles::editDistance("glouse", "glove");
  int dGloss = oracles::editDistance("glouse", "gloss");
  int dHouse = oracles::editDistance("glouse", "house");
  CHECK(dGlove == 2);
  CHECK(dGloss == 2);
  CHECK(dHouse == 2);
  for (const auto& [form, ids] : onto.lexicon()) {
    if (form == "glove" || form == "gloss" || form == "house") continue;
    CHECK(oracles::editDistance("glouse", form) > 2);
  }
  CHECK(correctSpelling("glouse", onto) == "glove");
}

TEST_CASE("correctSpelling leaves unknown-but-distant strings alone") {
  auto onto = wordsOntology();
  for (const auto& [form, ids] : onto.lexicon()) {
    CHECK(oracles::editDistance("spects", form) > 2);
  }
  CHECK(correctSpelling("spects", onto) == "spects");
}

TEST_CASE("correctSpelling never moves away from the lexicon") {
  auto onto = wordsOntology();
  auto nearestDistance = [&](const std::string& s) {
    int best = 1 << 20;
    for (const auto& [form, ids] : onto.lexicon()) {
      best = std::min(best, oracles::editDistance(s, form));
    }
    return best;
  };
  Rng rng(17);
  const std::string alphabet = "abcdefghlos ";
  for (int i = 0; i < 200; ++i) {
    std::string s;
    size_t len = 1 + rng.uniformInt(9);
    for (size_t j = 0; j < len; ++j) s.push_back(alphabet[rng.uniformInt(alphabet.size())]);
    s = normalizeWhitespace(s);
    if (s.empty()) continue;
    auto corrected = correctSpelling(s, onto);
    CHECK(nearestDistance(corrected) <= nearestDistance(toLower(s)));
  }
}

TEST_CASE("extractHead finds the longest lexicon suffix") {
  auto onto = wordsOntology();
  auto [head1, mods1] = extractHead("sliced cheese", onto);
  CHECK(head1 == "cheese");
  CHECK(mods1 == std::vector<std::string>{"sliced"});

  auto [head2, mods2] = extractHead("sea lion", onto);
  CHECK(head2 == "sea lion");
  CHECK(mods2.empty());

  auto [head3, mods3] = extractHead("dog", onto);
  CHECK(head3 == "dog");
  CHECK(mods3.empty());
}

TEST_CASE("identifyEntities prefers the full string over the head") {
  auto onto = wordsOntology();
  CHECK(identifyEntities("bun", "bun", onto) ==
        std::set<std::string>{"bread_bun", "hair_bun"});
  CHECK(identifyEntities("sea lion", "sea lion", onto) == std::set<std::string>{"sea_lion"});
  CHECK(identifyEntities("spects", "spects", onto).empty());
}

TEST_CASE("normalizePoint composes the steps") {
  auto onto = wordsOntology();
  auto c1 = normalizePoint(annot("doog"), onto);
  CHECK(c1.candidates == std::vector<std::string>{"dog"});
  CHECK(c1.corrected == "dog");

  // Non-physical entities are dropped by the restriction.
  auto c2 = normalizePoint(annot("freedom"), onto);
  CHECK(c2.candidates.empty());

  // Plural folding finds the lexicon hit; the fold itself is checked against
  // the lexicon rather than edit distance.
  auto c3 = normalizePoint(annot("breads"), onto);
  CHECK(c3.candidates == std::vector<std::string>{"bread"});
}

TEST_CASE("normalizePoint is deterministic and respects the restriction") {
  auto ex = workedExample();
  Rng rng(23);
  std::vector<std::string> raws = {"bun",  "doog",   "food",  "spects", "hair bun",
                                   "cats", "glasses", "dogs", "breads", "persen"};
  for (const auto& raw : raws) {
    auto a = normalizePoint(annot(raw), ex.ontology);
    auto b = normalizePoint(annot(raw), ex.ontology);
    CHECK(a.candidates == b.candidates);
    CHECK(a.corrected == b.corrected);
    for (const auto& e : a.candidates) {
      CHECK(ex.ontology.restrictToPhysical({e}).count(e) == 1);
    }
  }
}

TEST_CASE("normalizeCorpus output is thread-count independent") {
  auto ex = workedExample();
  auto one = normalizeCorpus(ex.annotations, ex.ontology, 1);
  auto four = normalizeCorpus(ex.annotations, ex.ontology, 4);
  REQUIRE(one.size() == four.size());
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].pointId == four[i].pointId);
    CHECK(one[i].candidates == four[i].candidates);
  }
}
