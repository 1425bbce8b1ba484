#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vocemerge/io.hpp"
#include "vocemerge/ontology.hpp"
#include "vocemerge/types.hpp"

namespace vocemerge {

// One simulated annotator's behavior. Each dimension exercises one pipeline
// stage: typos (spelling correction), jitter (clustering), recall
// (exhaustiveness), knowledge depth (label specificity), synonym bias
// (surface-form choice including polysemous forms).
struct AnnotatorProfile {
  std::string annotatorId;
  double typoRate = 0.0;          // per-token corruption probability
  double clickJitterSigma = 0.0;  // normalized units
  double recallProb = 1.0;        // probability of labeling each object
  int defaultKnowledgeDepth = 0;  // levels above the leaf the annotator reports
  std::map<std::string, int> knowledgeDepth;  // subtree root -> depth override
  // entity -> surface form -> weight; unlisted entities use uniform weights
  // over their lexicon forms.
  std::map<std::string, std::map<std::string, double>> synonymBias;
};

struct SceneObject {
  std::string objectId;
  std::string trueEntity;
  double x = 0.0;
  double y = 0.0;
  double extent = 0.05;
};

struct SceneSpec {
  std::string imageId;
  std::vector<SceneObject> objects;
};

struct GeneratorConfig {
  std::string ontologyPath;
  std::string lexiconPath;
  int images = 10;
  int minObjectsPerImage = 2;
  int maxObjectsPerImage = 4;
  double minSeparation = 0.25;
  double margin = 0.05;
  double objectExtent = 0.05;
  std::vector<AnnotatorProfile> annotators;
  std::vector<std::string> entityPool;  // classes objects are drawn from
  size_t featureDim = 8;
  double featureSigma = 0.05;
  double featureSeparation = 1.0;

  static GeneratorConfig fromJsonFile(const std::string& path);
  void validate(const Ontology& onto) const;
};

struct SimMeta {
  uint64_t seed = 0;
  int images = 0;
  long long points = 0;
  double featureSeparation = 0.0;
  double featureSigma = 0.0;
  double featureSeparationSigmaRatio = 0.0;  // +inf when sigma is 0
  double minSeparation = 0.0;
  double maxClickJitterSigma = 0.0;
  double separationJitterRatio = 0.0;  // +inf when jitter is 0
};

struct SimCorpus {
  std::vector<SceneSpec> scenes;
  std::vector<PointAnnotation> annotations;
  std::vector<GroundTruthRecord> groundTruth;
  FeatureStore features;
  SimMeta meta;
};

// Deterministic for a given (config, seed): scenes, clicks, labels, typos and
// features all come from one portable generator stream.
SimCorpus generateCorpus(const GeneratorConfig& config, uint64_t seed, const Ontology& onto);

// Writes annotations.jsonl, ground_truth.jsonl, features.csv, sim_meta.json.
void writeCorpus(const std::string& outDir, const SimCorpus& corpus);

// The fixed 3-image corpus used by docs and golden tests. Covers a typo
// ("doog"), polysemy ("bun" co-clustered with "food"), mixed specificity
// ("dog" vs "retriever") and an unrecognized word ("spects" co-clustered
// with "glasses"). Writes its own ontology.jsonl and lexicon.tsv too.
struct WorkedExample {
  Ontology ontology;
  std::vector<PointAnnotation> annotations;
};

WorkedExample workedExample();
void writeWorkedExample(const std::string& outDir);

}  // namespace vocemerge
