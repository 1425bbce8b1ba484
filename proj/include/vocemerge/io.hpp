#pragma once

#include <map>
#include <string>
#include <vector>

#include "vocemerge/types.hpp"

namespace vocemerge {

struct CoocGraph;
struct VertexAssignment;

// Readers validate records and report errors with file:line context.
std::vector<PointAnnotation> readAnnotations(const std::string& path);
std::vector<CandidateSet> readCandidates(const std::string& path);
std::vector<PointCluster> readClusters(const std::string& path);
std::vector<ResolvedPoint> readResolvedPoints(const std::string& path);
std::vector<GroundTruthRecord> readGroundTruth(const std::string& path);

void writeAnnotations(const std::string& path, const std::vector<PointAnnotation>& items);
void writeCandidates(const std::string& path, const std::vector<CandidateSet>& items);
void writeClusters(const std::string& path, const std::vector<PointCluster>& items);
void writeMergeTrace(const std::string& path,
                     const std::map<std::string, std::vector<MergeStep>>& traceByImage);
void writeResolvedPoints(const std::string& path, const std::vector<ResolvedPoint>& items);
void writeGroundTruth(const std::string& path, const std::vector<GroundTruthRecord>& items);
void writeDiscoveredWords(const std::string& path, const std::vector<DiscoveredWord>& items);
void writeStageStats(const std::string& path, const StageStats& stats);

// Feature vectors, one fixed-dimension row per point: point_id,v1,...,vd.
struct FeatureStore {
  size_t dim = 0;
  std::map<std::string, std::vector<double>> vectors;

  bool has(const std::string& pointId) const { return vectors.count(pointId) > 0; }
  const std::vector<double>& get(const std::string& pointId) const;
};

FeatureStore readFeatures(const std::string& path);
void writeFeatures(const std::string& path, const FeatureStore& store);

// Generic text helpers with atomic-ish write (temp file + rename).
void writeTextFile(const std::string& path, const std::string& content);
std::string readTextFile(const std::string& path);

}  // namespace vocemerge
