#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vocemerge/ontology.hpp"
#include "vocemerge/specializer.hpp"
#include "vocemerge/types.hpp"
#include "vocemerge/vocab.hpp"

namespace vocemerge {

struct AgreementThreshold {
  enum class Mode { Any, All, Fraction } mode = Mode::Any;
  double fraction = 0.0;

  static AgreementThreshold any() { return {Mode::Any, 0.0}; }
  static AgreementThreshold all() { return {Mode::All, 1.0}; }
  static AgreementThreshold at(double f) { return {Mode::Fraction, f}; }
};

struct AgreementResult {
  std::map<std::string, std::set<std::string>> labelsByImage;
  double meanClassesPerImage = 0.0;
};

// Keeps an entity for an image when at least the requested share of that
// image's annotators used it (ties at the threshold count as agreement).
AgreementResult agreementLabels(const std::vector<ResolvedPoint>& points,
                                const AgreementThreshold& threshold);

struct ClassFrequency {
  std::string entity;
  long long count = 0;
  double share = 0.0;
};

struct ClassDistribution {
  std::vector<ClassFrequency> ranked;  // descending count, then entity id
  long long total = 0;
  int topK = 0;
  double topKShare = 0.0;
};

ClassDistribution classDistribution(const std::vector<ResolvedPoint>& points, int topK);

struct PrPoint {
  int agreementLevel = 0;  // >= this many annotators used the label
  double precision = 0.0;
  double recall = 0.0;
  long long predicted = 0;
  long long matched = 0;
  long long referenced = 0;
  bool zeroSupport = false;  // no predictions; precision reported as 1.0
};

// Micro-averaged precision/recall per agreement level 1..A against per-image
// reference label sets. An optional vocabulary filter drops out-of-vocabulary
// predictions; an optional many-to-one label map renames predictions first.
std::vector<PrPoint> prAgainstReference(
    const std::vector<ResolvedPoint>& points,
    const std::map<std::string, std::set<std::string>>& reference,
    const std::optional<std::set<std::string>>& vocabularyFilter = std::nullopt,
    const std::map<std::string, std::string>& labelMap = {});

struct AccuracyBreakdown {
  double accuracy = 0.0;
  long long correct = 0;
  long long total = 0;
};

struct DisambiguationAccuracy {
  AccuracyBreakdown overall;
  std::map<std::string, AccuracyBreakdown> byProvenance;
  // Points whose original candidate set had >= 2 entities (needs candidates).
  std::optional<AccuracyBreakdown> polysemous;
};

// A resolved entity counts as correct when it equals the true entity or is
// one of its ancestors (annotators legitimately report more generic classes).
// strict = exact equality only.
DisambiguationAccuracy disambiguationAccuracy(
    const std::vector<ResolvedPoint>& resolved,
    const std::vector<GroundTruthRecord>& groundTruth, const Ontology& onto,
    bool strict = false, const std::vector<CandidateSet>* candidates = nullptr);

// Greedy comparison baseline for the reduced-vocabulary optimizer: grows the
// set one entity at a time by best immediate objective.
ReducedVocabulary greedyReduceVocabulary(const NaturalVocabulary& nv,
                                         const NaturalHierarchy& nh, int n, double alpha);

struct ReportInputs {
  std::optional<AgreementResult> agreementAny;
  std::optional<AgreementResult> agreementAll;
  std::map<std::string, AgreementResult> agreementAtFraction;  // key: e.g. "0.5"
  std::optional<ClassDistribution> distribution;
  std::vector<PrPoint> precisionRecall;
  std::optional<DisambiguationAccuracy> accuracy;
  std::vector<ReducedVocabulary> vocabSweep;
  std::vector<ReducedVocabulary> greedySweep;
  std::optional<SpecializeCorpusResult> specialization;
};

// Single JSON report; curves go to sibling CSV files. Errors when no metric
// is present.
void renderReport(const std::string& outDir, const ReportInputs& inputs);

}  // namespace vocemerge
