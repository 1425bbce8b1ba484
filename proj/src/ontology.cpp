#include "vocemerge/ontology.hpp"

#include <fstream>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

namespace {

using json = nlohmann::ordered_json;

}  // namespace

Ontology Ontology::load(const std::string& entityFile, const std::string& lexiconFile) {
  Ontology o;
  std::ifstream in(entityFile);
  if (!in) throw VocabError(ErrorCode::Io, "cannot open ontology file: " + entityFile);
  std::string line;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& e) {
      throw VocabError(ErrorCode::Parse, entityFile + ":" + std::to_string(lineNo) +
                                             ": invalid JSON: " + e.what());
    }
    if (!rec.contains("id") || !rec.contains("name")) {
      throw VocabError(ErrorCode::Parse, entityFile + ":" + std::to_string(lineNo) +
                                             ": entity record needs id and name");
    }
    Entity e;
    e.id = rec["id"].get<std::string>();
    e.name = normalizeWhitespace(toLower(rec["name"].get<std::string>()));
    if (rec.contains("parent") && !rec["parent"].is_null()) {
      e.parent = rec["parent"].get<std::string>();
    }
    if (e.id.empty()) {
      throw VocabError(ErrorCode::Parse,
                       entityFile + ":" + std::to_string(lineNo) + ": empty entity id");
    }
    if (e.name.empty()) {
      throw VocabError(ErrorCode::Validation, entityFile + ":" + std::to_string(lineNo) +
                                                  ": empty canonical name for " + e.id);
    }
    if (o.entities_.count(e.id)) {
      throw VocabError(ErrorCode::Validation, entityFile + ":" + std::to_string(lineNo) +
                                                  ": duplicate entity id " + e.id);
    }
    if (rec.value("physical_root", false)) o.physicalRoots_.insert(e.id);
    o.entities_.emplace(e.id, std::move(e));
  }

  if (!lexiconFile.empty()) {
    std::ifstream lex(lexiconFile);
    if (!lex) throw VocabError(ErrorCode::Io, "cannot open lexicon file: " + lexiconFile);
    lineNo = 0;
    while (std::getline(lex, line)) {
      ++lineNo;
      if (trim(line).empty()) continue;
      auto cols = splitChar(line, '\t');
      if (cols.size() < 2) {
        throw VocabError(ErrorCode::Parse, lexiconFile + ":" + std::to_string(lineNo) +
                                               ": expected surface_form<TAB>entity_id");
      }
      std::string surface = normalizeWhitespace(toLower(cols[0]));
      std::string id = trim(cols[1]);
      if (surface.empty() || id.empty()) {
        throw VocabError(ErrorCode::Parse, lexiconFile + ":" + std::to_string(lineNo) +
                                               ": empty surface form or entity id");
      }
      if (!o.entities_.count(id)) {
        throw VocabError(ErrorCode::Validation, lexiconFile + ":" + std::to_string(lineNo) +
                                                     ": lexicon references unknown entity " + id);
      }
      o.lexicon_[surface].insert(id);
      if (cols.size() >= 3 && !trim(cols[2]).empty()) {
        try {
          o.surfaceFreq_[surface] += std::stoll(trim(cols[2]));
        } catch (const std::exception&) {
          throw VocabError(ErrorCode::Parse, lexiconFile + ":" + std::to_string(lineNo) +
                                                 ": bad frequency value");
        }
      }
    }
  }

  o.validate();
  return o;
}

Ontology Ontology::fromEntities(const std::vector<Entity>& entities,
                                const std::vector<std::string>& physicalRoots,
                                const std::vector<std::pair<std::string, std::string>>& lexicon,
                                const std::map<std::string, long long>& surfaceFreq) {
  Ontology o;
  for (const auto& e : entities) {
    Entity copy = e;
    copy.name = normalizeWhitespace(toLower(copy.name));
    if (o.entities_.count(copy.id)) {
      throw VocabError(ErrorCode::Validation, "duplicate entity id " + copy.id);
    }
    o.entities_.emplace(copy.id, std::move(copy));
  }
  for (const auto& r : physicalRoots) o.physicalRoots_.insert(r);
  for (const auto& [surface, id] : lexicon) {
    if (!o.entities_.count(id)) {
      throw VocabError(ErrorCode::Validation, "lexicon references unknown entity " + id);
    }
    o.lexicon_[normalizeWhitespace(toLower(surface))].insert(id);
  }
  for (const auto& [surface, f] : surfaceFreq) {
    o.surfaceFreq_[normalizeWhitespace(toLower(surface))] = f;
  }
  o.validate();
  return o;
}

void Ontology::validate() {
  // Parent links must exist and form a forest.
  for (const auto& [id, e] : entities_) {
    if (!e.parent.empty() && !entities_.count(e.parent)) {
      throw VocabError(ErrorCode::DanglingParent,
                       "entity " + id + " references missing parent " + e.parent);
    }
  }
  for (const auto& [id, e] : entities_) {
    std::set<std::string> seen;
    const Entity* cur = &e;
    int d = 0;
    seen.insert(id);
    while (!cur->parent.empty()) {
      if (seen.count(cur->parent)) {
        throw VocabError(ErrorCode::Cycle, "cycle detected at entity " + cur->parent);
      }
      seen.insert(cur->parent);
      cur = &entities_.at(cur->parent);
      ++d;
    }
    depth_[id] = d;
  }
  for (const auto& [id, e] : entities_) {
    if (!e.parent.empty()) children_[e.parent].push_back(id);
  }
  for (const auto& r : physicalRoots_) {
    if (!entities_.count(r)) {
      throw VocabError(ErrorCode::Validation, "physical root " + r + " is not an entity");
    }
  }
  // Without explicit flags every forest root counts as physical, otherwise
  // restriction would empty every candidate set.
  if (physicalRoots_.empty()) {
    for (const auto& [id, e] : entities_) {
      if (e.parent.empty()) physicalRoots_.insert(id);
    }
  }
  for (const auto& [surface, ids] : lexicon_) {
    auto toks = splitWhitespace(surface);
    if (toks.size() > 1) {
      for (const auto& t : toks) lexiconTokens_.insert(t);
    }
    for (const auto& id : ids) formsByEntity_[id].push_back(surface);
  }
}

const Entity& Ontology::entity(const std::string& id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) throw VocabError(ErrorCode::UnknownId, "unknown entity id: " + id);
  return it->second;
}

int Ontology::depth(const std::string& id) const {
  auto it = depth_.find(id);
  if (it == depth_.end()) throw VocabError(ErrorCode::UnknownId, "unknown entity id: " + id);
  return it->second;
}

std::vector<std::string> Ontology::children(const std::string& id) const {
  entity(id);
  auto it = children_.find(id);
  return it == children_.end() ? std::vector<std::string>{} : it->second;
}

bool Ontology::isSubclass(const std::string& a, const std::string& b) const {
  entity(b);
  const Entity* cur = &entity(a);
  for (;;) {
    if (cur->id == b) return true;
    if (cur->parent.empty()) return false;
    cur = &entity(cur->parent);
  }
}

bool Ontology::isPhysical(const std::string& id) const {
  const Entity* cur = &entity(id);
  for (;;) {
    if (physicalRoots_.count(cur->id)) return true;
    if (cur->parent.empty()) return false;
    cur = &entity(cur->parent);
  }
}

std::set<std::string> Ontology::restrictToPhysical(const std::set<std::string>& candidates) const {
  std::set<std::string> out;
  for (const auto& id : candidates) {
    if (isPhysical(id)) out.insert(id);
  }
  return out;
}

std::optional<std::string> Ontology::nearestAnnotatedAncestor(
    const std::string& e, const std::set<std::string>& annotated) const {
  const Entity* cur = &entity(e);
  while (!cur->parent.empty()) {
    cur = &entity(cur->parent);
    if (annotated.count(cur->id)) return cur->id;
  }
  return std::nullopt;
}

bool Ontology::lexiconHas(const std::string& surface) const {
  return lexicon_.count(surface) > 0;
}

const std::set<std::string>* Ontology::lexiconLookup(const std::string& surface) const {
  auto it = lexicon_.find(surface);
  return it == lexicon_.end() ? nullptr : &it->second;
}

const std::set<std::string>* Ontology::lexiconLookupFolded(const std::string& surface,
                                                           std::string* matchedForm) const {
  if (const auto* hit = lexiconLookup(surface)) {
    if (matchedForm) *matchedForm = surface;
    return hit;
  }
  if (surface.size() > 1 && surface.back() == 's') {
    std::string folded = surface.substr(0, surface.size() - 1);
    if (const auto* hit = lexiconLookup(folded)) {
      if (matchedForm) *matchedForm = folded;
      return hit;
    }
  }
  if (surface.size() > 2 && surface.compare(surface.size() - 2, 2, "es") == 0) {
    std::string folded = surface.substr(0, surface.size() - 2);
    if (const auto* hit = lexiconLookup(folded)) {
      if (matchedForm) *matchedForm = folded;
      return hit;
    }
  }
  return nullptr;
}

long long Ontology::surfaceFrequency(const std::string& surface) const {
  auto it = surfaceFreq_.find(surface);
  return it == surfaceFreq_.end() ? 0 : it->second;
}

bool Ontology::isLexiconToken(const std::string& token) const {
  if (lexiconTokens_.count(token)) return true;
  if (token.size() > 1 && token.back() == 's' &&
      lexiconTokens_.count(token.substr(0, token.size() - 1)))
    return true;
  if (token.size() > 2 && token.compare(token.size() - 2, 2, "es") == 0 &&
      lexiconTokens_.count(token.substr(0, token.size() - 2)))
    return true;
  return false;
}

std::vector<std::string> Ontology::surfaceFormsFor(const std::string& entityId) const {
  entity(entityId);
  auto it = formsByEntity_.find(entityId);
  return it == formsByEntity_.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace vocemerge
