#include "vocemerge/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/rng.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

namespace {

using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

AnnotatorProfile profileFromJson(const json& rec, const AnnotatorProfile& defaults) {
  AnnotatorProfile p = defaults;
  if (rec.contains("annotator_id")) p.annotatorId = rec["annotator_id"].get<std::string>();
  if (rec.contains("typo_rate")) p.typoRate = rec["typo_rate"].get<double>();
  if (rec.contains("click_jitter_sigma")) {
    p.clickJitterSigma = rec["click_jitter_sigma"].get<double>();
  }
  if (rec.contains("recall_prob")) p.recallProb = rec["recall_prob"].get<double>();
  if (rec.contains("knowledge_depth")) {
    const auto& kd = rec["knowledge_depth"];
    p.knowledgeDepth.clear();
    if (kd.is_number_integer()) {
      p.defaultKnowledgeDepth = kd.get<int>();
    } else {
      for (const auto& [key, val] : kd.items()) {
        if (key == "default") p.defaultKnowledgeDepth = val.get<int>();
        else p.knowledgeDepth[key] = val.get<int>();
      }
    }
  }
  if (rec.contains("synonym_bias")) {
    p.synonymBias.clear();
    for (const auto& [entity, forms] : rec["synonym_bias"].items()) {
      for (const auto& [form, w] : forms.items()) {
        p.synonymBias[entity][form] = w.get<double>();
      }
    }
  }
  return p;
}

std::string typoCorrupt(const std::string& token, Rng& rng) {
  static const char* alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::vector<int> ops = {0, 1};  // insert, substitute
  if (token.size() >= 2) {
    ops.push_back(2);  // delete
    ops.push_back(3);  // transpose
  }
  int op = ops[rng.uniformInt(ops.size())];
  std::string out = token;
  switch (op) {
    case 0: {
      size_t pos = rng.uniformInt(out.size() + 1);
      out.insert(out.begin() + pos, alphabet[rng.uniformInt(26)]);
      break;
    }
    case 1: {
      size_t pos = rng.uniformInt(out.size());
      out[pos] = alphabet[rng.uniformInt(26)];
      break;
    }
    case 2: {
      size_t pos = rng.uniformInt(out.size());
      out.erase(out.begin() + pos);
      break;
    }
    case 3: {
      size_t pos = rng.uniformInt(out.size() - 1);
      std::swap(out[pos], out[pos + 1]);
      break;
    }
  }
  return out.empty() ? token : out;
}

// Chain of physical ancestors from the entity upward, inclusive.
std::vector<std::string> physicalChain(const std::string& entity, const Ontology& onto) {
  std::vector<std::string> chain;
  std::string cur = entity;
  for (;;) {
    chain.push_back(cur);
    if (onto.physicalRoots().count(cur)) break;
    const auto& parent = onto.entity(cur).parent;
    if (parent.empty()) break;
    cur = parent;
  }
  return chain;
}

int depthFor(const AnnotatorProfile& p, const std::string& leaf, const Ontology& onto) {
  int best = p.defaultKnowledgeDepth;
  int bestRootDepth = -1;
  for (const auto& [root, depth] : p.knowledgeDepth) {
    if (!onto.has(root) || !onto.isSubclass(leaf, root)) continue;
    int rd = onto.depth(root);
    if (rd > bestRootDepth) {
      bestRootDepth = rd;
      best = depth;
    }
  }
  return best;
}

std::string pickSurface(const AnnotatorProfile& p, const std::string& entity,
                        const Ontology& onto, Rng& rng) {
  auto forms = onto.surfaceFormsFor(entity);
  std::sort(forms.begin(), forms.end());
  if (forms.empty()) return onto.canonicalName(entity);
  auto biasIt = p.synonymBias.find(entity);
  std::vector<double> weights(forms.size(), 1.0);
  if (biasIt != p.synonymBias.end()) {
    for (size_t i = 0; i < forms.size(); ++i) {
      auto w = biasIt->second.find(forms[i]);
      weights[i] = w == biasIt->second.end() ? 0.0 : w->second;
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) weights.assign(forms.size(), 1.0);
  }
  if (forms.size() == 1) return forms.front();
  return forms[rng.pickWeighted(weights)];
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

GeneratorConfig GeneratorConfig::fromJsonFile(const std::string& path) {
  json doc;
  try {
    doc = json::parse(readTextFile(path));
  } catch (const VocabError&) {
    throw;
  } catch (const std::exception& e) {
    throw VocabError(ErrorCode::Config, path + ": invalid JSON: " + std::string(e.what()));
  }
  GeneratorConfig cfg;
  cfg.ontologyPath = doc.value("ontology", "");
  cfg.lexiconPath = doc.value("lexicon", "");
  cfg.images = doc.value("images", cfg.images);
  if (doc.contains("objects_per_image")) {
    const auto& arr = doc["objects_per_image"];
    cfg.minObjectsPerImage = arr.at(0).get<int>();
    cfg.maxObjectsPerImage = arr.at(1).get<int>();
  }
  cfg.minSeparation = doc.value("min_separation", cfg.minSeparation);
  cfg.margin = doc.value("margin", cfg.margin);
  cfg.objectExtent = doc.value("object_extent", cfg.objectExtent);
  cfg.featureDim = doc.value("feature_dim", cfg.featureDim);
  cfg.featureSigma = doc.value("feature_sigma", cfg.featureSigma);
  cfg.featureSeparation = doc.value("feature_separation", cfg.featureSeparation);
  if (doc.contains("entity_pool")) {
    cfg.entityPool = doc["entity_pool"].get<std::vector<std::string>>();
  }
  AnnotatorProfile defaults;
  if (doc.contains("annotator_defaults")) {
    defaults = profileFromJson(doc["annotator_defaults"], defaults);
  }
  int count = doc.value("annotators", 0);
  std::vector<json> overrides;
  if (doc.contains("annotator_profiles")) {
    for (const auto& rec : doc["annotator_profiles"]) overrides.push_back(rec);
  }
  count = std::max(count, static_cast<int>(overrides.size()));
  if (count <= 0) count = 2;
  for (int i = 0; i < count; ++i) {
    AnnotatorProfile p =
        i < static_cast<int>(overrides.size()) ? profileFromJson(overrides[i], defaults)
                                               : defaults;
    if (p.annotatorId.empty()) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "ann%03d", i + 1);
      p.annotatorId = buf;
    }
    cfg.annotators.push_back(std::move(p));
  }
  return cfg;
}

void GeneratorConfig::validate(const Ontology& onto) const {
  if (images <= 0) throw VocabError(ErrorCode::Config, "images must be positive");
  if (minObjectsPerImage <= 0 || maxObjectsPerImage < minObjectsPerImage) {
    throw VocabError(ErrorCode::Config, "bad objects_per_image range");
  }
  if (annotators.empty()) throw VocabError(ErrorCode::Config, "need at least one annotator");
  if (entityPool.empty()) throw VocabError(ErrorCode::Config, "entity_pool must be set");
  for (const auto& e : entityPool) {
    if (!onto.has(e)) throw VocabError(ErrorCode::Config, "entity_pool id not in ontology: " + e);
    if (!onto.isPhysical(e)) {
      throw VocabError(ErrorCode::Config, "entity_pool id not physical: " + e);
    }
  }
  if (featureDim < entityPool.size()) {
    throw VocabError(ErrorCode::Config, "feature_dim must be >= entity_pool size");
  }
  for (const auto& p : annotators) {
    if (p.typoRate < 0 || p.typoRate > 1 || p.recallProb < 0 || p.recallProb > 1) {
      throw VocabError(ErrorCode::Config, "probabilities must be in [0,1]");
    }
    if (p.clickJitterSigma < 0) throw VocabError(ErrorCode::Config, "jitter must be >= 0");
  }
}

SimCorpus generateCorpus(const GeneratorConfig& config, uint64_t seed, const Ontology& onto) {
  config.validate(onto);
  SimCorpus corpus;
  Rng rng(seed);

  // Per-class feature centroids on one-hot axes: pairwise distance equals
  // featureSeparation exactly.
  std::vector<std::string> pool = config.entityPool;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::map<std::string, std::vector<double>> centroids;
  const double axis = config.featureSeparation / std::sqrt(2.0);
  for (size_t i = 0; i < pool.size(); ++i) {
    std::vector<double> c(config.featureDim, 0.0);
    c[i] = axis;
    centroids[pool[i]] = std::move(c);
  }

  // Scenes.
  for (int img = 0; img < config.images; ++img) {
    SceneSpec scene;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "img%05d", img + 1);
    scene.imageId = buf;
    int want = config.minObjectsPerImage +
               static_cast<int>(rng.uniformInt(
                   static_cast<uint64_t>(config.maxObjectsPerImage - config.minObjectsPerImage + 1)));
    int placed = 0;
    int attempts = 0;
    while (placed < want) {
      if (++attempts > 1000 * want) {
        throw VocabError(ErrorCode::Config,
                         "cannot place objects with min_separation " +
                             formatDouble(config.minSeparation));
      }
      double x = config.margin + rng.uniform() * (1.0 - 2.0 * config.margin);
      double y = config.margin + rng.uniform() * (1.0 - 2.0 * config.margin);
      bool ok = true;
      for (const auto& o : scene.objects) {
        double dx = o.x - x, dy = o.y - y;
        if (std::sqrt(dx * dx + dy * dy) < config.minSeparation) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      SceneObject obj;
      std::snprintf(buf, sizeof(buf), "%s_o%02d", scene.imageId.c_str(), placed + 1);
      obj.objectId = buf;
      obj.trueEntity = pool[rng.uniformInt(pool.size())];
      obj.x = x;
      obj.y = y;
      obj.extent = config.objectExtent;
      scene.objects.push_back(std::move(obj));
      ++placed;
    }
    corpus.scenes.push_back(std::move(scene));
  }

  // Clicks, labels, features.
  long long counter = 0;
  for (const auto& scene : corpus.scenes) {
    for (const auto& profile : config.annotators) {
      for (const auto& obj : scene.objects) {
        if (rng.uniform() >= profile.recallProb) continue;
        auto chain = physicalChain(obj.trueEntity, onto);
        int depth = depthFor(profile, obj.trueEntity, onto);
        const std::string& intended =
            chain[std::min<size_t>(static_cast<size_t>(std::max(depth, 0)), chain.size() - 1)];
        std::string surface = pickSurface(profile, intended, onto, rng);
        auto tokens = splitWhitespace(surface);
        for (auto& t : tokens) {
          if (rng.uniform() < profile.typoRate) t = typoCorrupt(t, rng);
        }
        PointAnnotation p;
        char buf[24];
        std::snprintf(buf, sizeof(buf), "p%06lld", ++counter);
        p.pointId = buf;
        p.imageId = scene.imageId;
        p.annotatorId = profile.annotatorId;
        p.x = clamp01(obj.x + profile.clickJitterSigma * rng.normal());
        p.y = clamp01(obj.y + profile.clickJitterSigma * rng.normal());
        p.raw = join(tokens, " ");
        corpus.annotations.push_back(p);
        corpus.groundTruth.push_back({p.pointId, obj.objectId, obj.trueEntity, intended});
        std::vector<double> f = centroids.at(obj.trueEntity);
        for (auto& v : f) v += config.featureSigma * rng.normal();
        corpus.features.vectors[p.pointId] = std::move(f);
      }
    }
  }
  corpus.features.dim = config.featureDim;

  corpus.meta.seed = seed;
  corpus.meta.images = config.images;
  corpus.meta.points = counter;
  corpus.meta.featureSeparation = config.featureSeparation;
  corpus.meta.featureSigma = config.featureSigma;
  corpus.meta.featureSeparationSigmaRatio =
      config.featureSigma == 0.0 ? kInf : config.featureSeparation / config.featureSigma;
  corpus.meta.minSeparation = config.minSeparation;
  double maxJitter = 0.0;
  for (const auto& p : config.annotators) maxJitter = std::max(maxJitter, p.clickJitterSigma);
  corpus.meta.maxClickJitterSigma = maxJitter;
  corpus.meta.separationJitterRatio =
      maxJitter == 0.0 ? kInf : config.minSeparation / maxJitter;
  return corpus;
}

void writeCorpus(const std::string& outDir, const SimCorpus& corpus) {
  namespace fs = std::filesystem;
  fs::create_directories(outDir);
  writeAnnotations((fs::path(outDir) / "annotations.jsonl").string(), corpus.annotations);
  writeGroundTruth((fs::path(outDir) / "ground_truth.jsonl").string(), corpus.groundTruth);
  writeFeatures((fs::path(outDir) / "features.csv").string(), corpus.features);
  json meta;
  meta["seed"] = corpus.meta.seed;
  meta["images"] = corpus.meta.images;
  meta["points"] = corpus.meta.points;
  meta["feature_separation"] = corpus.meta.featureSeparation;
  meta["feature_sigma"] = corpus.meta.featureSigma;
  meta["feature_separation_sigma_ratio"] =
      std::isinf(corpus.meta.featureSeparationSigmaRatio)
          ? json("inf")
          : json(corpus.meta.featureSeparationSigmaRatio);
  meta["min_separation"] = corpus.meta.minSeparation;
  meta["max_click_jitter_sigma"] = corpus.meta.maxClickJitterSigma;
  meta["separation_jitter_ratio"] = std::isinf(corpus.meta.separationJitterRatio)
                                        ? json("inf")
                                        : json(corpus.meta.separationJitterRatio);
  writeTextFile((fs::path(outDir) / "sim_meta.json").string(), meta.dump(2) + "\n");
}

WorkedExample workedExample() {
  WorkedExample ex;
  std::vector<Entity> entities = {
      {"physical_object", "physical object", ""},
      {"food", "food", "physical_object"},
      {"bread_bun", "bread bun", "food"},
      {"hairstyle", "hairstyle", "physical_object"},
      {"hair_bun", "hair bun", "hairstyle"},
      {"animal", "animal", "physical_object"},
      {"dog", "dog", "animal"},
      {"retriever", "retriever", "dog"},
      {"cat", "cat", "animal"},
      {"accessory", "accessory", "physical_object"},
      {"glasses", "glasses", "accessory"},
      {"person", "person", "physical_object"},
  };
  std::vector<std::pair<std::string, std::string>> lexicon = {
      {"bun", "bread_bun"},   {"bun", "hair_bun"},      {"bread bun", "bread_bun"},
      {"hair bun", "hair_bun"}, {"food", "food"},       {"animal", "animal"},
      {"dog", "dog"},         {"retriever", "retriever"}, {"cat", "cat"},
      {"glasses", "glasses"}, {"person", "person"},     {"hairstyle", "hairstyle"},
      {"accessory", "accessory"}, {"physical object", "physical_object"},
  };
  ex.ontology = Ontology::fromEntities(entities, {"physical_object"}, lexicon);

  auto point = [](const char* pid, const char* img, const char* ann, double x, double y,
                  const char* raw) {
    PointAnnotation p;
    p.pointId = pid;
    p.imageId = img;
    p.annotatorId = ann;
    p.x = x;
    p.y = y;
    p.raw = raw;
    return p;
  };
  ex.annotations = {
      point("p001", "img001", "ann1", 0.30, 0.40, "bun"),
      point("p002", "img001", "ann2", 0.31, 0.41, "food"),
      point("p003", "img001", "ann1", 0.70, 0.60, "doog"),
      point("p004", "img001", "ann2", 0.71, 0.61, "retriever"),
      point("p005", "img002", "ann1", 0.50, 0.30, "glasses"),
      point("p006", "img002", "ann2", 0.51, 0.31, "spects"),
      point("p007", "img002", "ann1", 0.20, 0.80, "cat"),
      point("p008", "img002", "ann2", 0.21, 0.81, "cat"),
      point("p009", "img003", "ann1", 0.40, 0.50, "bun"),
      point("p010", "img003", "ann2", 0.41, 0.51, "food"),
      point("p011", "img003", "ann1", 0.80, 0.20, "dog"),
      point("p012", "img003", "ann2", 0.81, 0.21, "dog"),
  };
  return ex;
}

void writeWorkedExample(const std::string& outDir) {
  namespace fs = std::filesystem;
  fs::create_directories(outDir);
  auto ex = workedExample();

  std::string ontoBuf;
  for (const auto& [id, e] : ex.ontology.entities()) {
    json rec;
    rec["id"] = e.id;
    rec["name"] = e.name;
    rec["parent"] = e.parent.empty() ? json(nullptr) : json(e.parent);
    if (ex.ontology.physicalRoots().count(e.id)) rec["physical_root"] = true;
    ontoBuf += rec.dump();
    ontoBuf += '\n';
  }
  writeTextFile((fs::path(outDir) / "ontology.jsonl").string(), ontoBuf);

  std::string lexBuf;
  for (const auto& [surface, ids] : ex.ontology.lexicon()) {
    for (const auto& id : ids) {
      lexBuf += surface + "\t" + id + "\n";
    }
  }
  writeTextFile((fs::path(outDir) / "lexicon.tsv").string(), lexBuf);

  writeAnnotations((fs::path(outDir) / "annotations.jsonl").string(), ex.annotations);
}

}  // namespace vocemerge
