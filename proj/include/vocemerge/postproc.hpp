#pragma once

#include <string>
#include <vector>

#include "vocemerge/disambiguator.hpp"
#include "vocemerge/ontology.hpp"
#include "vocemerge/types.hpp"

namespace vocemerge {

// Unrecognized vertices with an edge to an unambiguous vertex adopt that
// vertex's entity (strongest edge wins; ties by neighbor vertex id). Status
// snapshots are taken up front, so one pass never chains adoptions.
// Returns the surface-to-entity discoveries made.
std::vector<DiscoveredWord> resolveUnrecognized(std::vector<VertexAssignment>& assignments,
                                                const CoocGraph& g);

// Rule A: candidates forming a chain under the subclass order collapse to
// the most generic one. Rule B: otherwise, a single candidate whose
// canonical name equals a member point's corrected string wins. One pass of
// A, then one pass of B over the survivors.
void resolveAmbiguous(std::vector<VertexAssignment>& assignments, const CoocGraph& g,
                      const std::vector<CandidateSet>& candidates, const Ontology& onto);

struct ReviewRecord {
  std::string vertexId;
  std::string status;
  std::string key;
  std::vector<std::string> entities;
  std::vector<std::string> pointIds;
};

struct PostprocResult {
  std::vector<ResolvedPoint> resolved;  // sorted by point id
  StageStats stats;
  std::vector<DiscoveredWord> discovered;
  std::vector<ReviewRecord> review;
  std::vector<VertexAssignment> finalAssignments;
};

// Runs both post-processing rules over the assignment output and materializes
// the final unambiguous points with per-stage accounting. `iterate` re-runs
// the adoption and ambiguity rules once more before the final tally.
PostprocResult runPostprocessing(const CoocGraph& g,
                                 const std::vector<VertexAssignment>& assignments,
                                 const std::vector<CandidateSet>& candidates,
                                 const std::vector<PointAnnotation>& annotations,
                                 const Ontology& onto, bool iterate = false);

void writeReview(const std::string& path, const std::vector<ReviewRecord>& items);

}  // namespace vocemerge
