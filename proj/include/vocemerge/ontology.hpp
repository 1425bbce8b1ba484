#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vocemerge {

struct Entity {
  std::string id;
  std::string name;    // canonical name, lowercase, trimmed
  std::string parent;  // empty for forest roots
};

// Physical-object hierarchy plus the surface-form lexicon. Immutable after
// load; safe for concurrent reads.
class Ontology {
 public:
  // entityFile: JSON Lines {"id","name","parent",("physical_root")}.
  // lexiconFile: TSV surface_form<TAB>entity_id[<TAB>frequency]. Either may
  // be empty ("" skips the lexicon).
  static Ontology load(const std::string& entityFile, const std::string& lexiconFile);

  // Programmatic construction (used by tests and the simulator).
  static Ontology fromEntities(const std::vector<Entity>& entities,
                               const std::vector<std::string>& physicalRoots,
                               const std::vector<std::pair<std::string, std::string>>& lexicon,
                               const std::map<std::string, long long>& surfaceFreq = {});

  bool has(const std::string& id) const { return entities_.count(id) > 0; }
  const Entity& entity(const std::string& id) const;
  const std::map<std::string, Entity>& entities() const { return entities_; }
  const std::set<std::string>& physicalRoots() const { return physicalRoots_; }
  const std::string& canonicalName(const std::string& id) const { return entity(id).name; }
  int depth(const std::string& id) const;
  std::vector<std::string> children(const std::string& id) const;

  // True iff b lies on a's parent chain, including a == b.
  bool isSubclass(const std::string& a, const std::string& b) const;

  bool isPhysical(const std::string& id) const;
  std::set<std::string> restrictToPhysical(const std::set<std::string>& candidates) const;

  // Closest strict ancestor of e contained in `annotated`, if any.
  std::optional<std::string> nearestAnnotatedAncestor(
      const std::string& e, const std::set<std::string>& annotated) const;

  // Lexicon access. Lookup keys are assumed lowercase + whitespace-normalized.
  bool lexiconHas(const std::string& surface) const;
  const std::set<std::string>* lexiconLookup(const std::string& surface) const;
  // Lookup that also tries stripping a trailing "s" then "es" when the folded
  // form is in the lexicon and the original is not. Returns the matched form.
  const std::set<std::string>* lexiconLookupFolded(const std::string& surface,
                                                   std::string* matchedForm = nullptr) const;
  long long surfaceFrequency(const std::string& surface) const;
  const std::map<std::string, std::set<std::string>>& lexicon() const { return lexicon_; }
  // Tokens appearing inside multi-word surface forms ("sea" from "sea lion").
  bool isLexiconToken(const std::string& token) const;
  std::vector<std::string> surfaceFormsFor(const std::string& entityId) const;

 private:
  void validate();

  std::map<std::string, Entity> entities_;
  std::map<std::string, std::set<std::string>> lexicon_;
  std::map<std::string, long long> surfaceFreq_;
  std::set<std::string> physicalRoots_;
  std::map<std::string, int> depth_;
  std::map<std::string, std::vector<std::string>> children_;
  std::set<std::string> lexiconTokens_;
  std::map<std::string, std::vector<std::string>> formsByEntity_;
};

}  // namespace vocemerge
