#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vocemerge {

// One click with its free-form text. Coordinates are normalized to [0,1].
struct PointAnnotation {
  std::string pointId;
  std::string imageId;
  std::string annotatorId;
  double x = 0.0;
  double y = 0.0;
  std::string raw;
};

// Output of normalization: the candidate ontology entities a string may mean.
// Empty candidates means the point is unrecognized.
struct CandidateSet {
  std::string pointId;
  std::vector<std::string> candidates;  // sorted entity ids
  std::string corrected;
  std::string head;
  std::vector<std::string> modifiers;
};

struct PointCluster {
  std::string clusterId;
  std::string imageId;
  std::vector<std::string> pointIds;  // sorted
  double score = 0.0;                 // +infinity allowed
};

struct MergeStep {
  std::vector<std::string> pointIds;  // merged cluster, sorted
  double score = 0.0;
};

struct ResolvedPoint {
  std::string pointId;
  std::string imageId;
  std::string annotatorId;
  double x = 0.0;
  double y = 0.0;
  std::string raw;
  std::string entity;
  std::string provenance;  // direct | disambiguated | adopted-unrecognized |
                           // generalized-ambiguous | string-matched
};

struct GroundTruthRecord {
  std::string pointId;
  std::string objectId;
  std::string trueEntity;      // the object's leaf class
  std::string intendedEntity;  // what the annotator meant after generalization
};

struct DiscoveredWord {
  std::string surface;
  std::string entity;
  long long supportWeight = 0;
};

struct StageRow {
  std::string name;
  double unambiguousPct = 0.0;
  double ambiguousPct = 0.0;
  double unrecognizedPct = 0.0;
  long long unambiguousPoints = 0;
  long long unambiguousClasses = 0;
};

struct StageStats {
  long long totalPoints = 0;
  std::vector<StageRow> stages;  // the four pipeline stages, in order
};

}  // namespace vocemerge
