#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vocemerge/io.hpp"
#include "vocemerge/types.hpp"
#include "vocemerge/vocab.hpp"

namespace vocemerge {

struct SpecializationResult {
  std::string pointId;
  std::string fromEntity;
  std::string toEntity;
  double nearestDistance = 0.0;
  double secondDistance = 0.0;
  double confidence = 1.0;  // secondDistance / nearestDistance, >= 1, may be +inf
  bool applied = false;
};

struct PoolPoint {
  std::string pointId;
  std::string childEntity;
};

// Nearest-neighbor specialization of one point against a pool of points
// labeled with strict children of its entity. The confidence is the distance
// to the nearest pool point of a *different* child class over the distance
// to the nearest pool point; `applied` requires confidence >= tau (tau =
// +inf disables application). Pool must span >= 2 child classes. Ties break
// by pool point id.
SpecializationResult specializePoint(const std::string& pointId, const std::string& fromEntity,
                                     const std::vector<PoolPoint>& pool,
                                     const FeatureStore& features, double tau,
                                     bool unitNorm = false);

struct SpecializeOptions {
  double tau = 2.0;
  bool unitNorm = false;
  // Evaluation mode: strip each child-labeled point to its parent and test
  // whether the nearest neighbor recovers the child class.
  bool stripToParentEval = false;
  long long minParentCount = 20;
  int minChildren = 2;
  long long minChildExamples = 2;
};

struct SkipRecord {
  std::string pointId;
  std::string reason;
};

struct CurvePoint {
  double coverage = 0.0;  // fraction of evaluated points, confidence-ranked
  double accuracy = 0.0;
};

struct SpecializeCorpusResult {
  std::vector<SpecializationResult> results;
  std::vector<SkipRecord> skipped;
  // Evaluation-mode extras.
  std::vector<CurvePoint> curve;
  double accuracy = 0.0;
  double baselineAccuracy = 0.0;  // always predicting the most frequent child
  long long evaluated = 0;
};

// Applies specialization across the corpus. Eligible parent classes have at
// least minParentCount points of their own plus minChildren child classes
// with minChildExamples points each. In apply mode the parent-labeled points
// are specialized; in evaluation mode the child-labeled points are stripped
// to the parent and re-predicted, producing the accuracy-coverage curve.
SpecializeCorpusResult specializeCorpus(const std::vector<ResolvedPoint>& points,
                                        const FeatureStore& features,
                                        const NaturalHierarchy& nh,
                                        const SpecializeOptions& options);

void writeSpecializationResults(const std::string& path,
                                const std::vector<SpecializationResult>& items);
// CSV: coverage,accuracy.
void writeAccuracyCurve(const std::string& path, const std::vector<CurvePoint>& curve);

}  // namespace vocemerge
