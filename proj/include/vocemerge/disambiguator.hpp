#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vocemerge/ontology.hpp"
#include "vocemerge/types.hpp"

namespace vocemerge {

// All points sharing one candidate entity set, or one unrecognized corrected
// string. Vertices partition the corpus's points.
struct Vertex {
  std::string vertexId;
  std::string key;                    // canonical: "E:" + ids or "U:" + string
  std::vector<std::string> entities;  // sorted; empty for unrecognized
  std::vector<std::string> pointIds;  // sorted
  std::string surface;                // corrected string of unrecognized vertices
};

struct CoocGraph {
  std::vector<Vertex> vertices;                     // sorted by key
  std::map<std::pair<int, int>, long long> edges;   // (i<j) -> co-cluster count
  std::map<std::string, int> vertexOfPoint;

  long long weight(int i, int j) const {
    if (i == j) return 0;
    auto it = edges.find({std::min(i, j), std::max(i, j)});
    return it == edges.end() ? 0 : it->second;
  }
  std::vector<std::pair<int, long long>> neighbors(int i) const;
  int indexOf(const std::string& vertexId) const;
};

enum class VertexStatus { Unambiguous, Ambiguous, Unrecognized };

struct VertexAssignment {
  std::string vertexId;
  VertexStatus status = VertexStatus::Unrecognized;
  std::optional<std::string> entity;
  std::map<std::string, long long> weights;
  std::string provenance;  // set when resolved
};

const char* statusName(VertexStatus s);
VertexStatus statusFromName(const std::string& name);

// Builds the dataset-wide co-occurrence graph. Edge weight = number of point
// clusters containing at least one point of each endpoint vertex.
CoocGraph buildGraph(const std::vector<CandidateSet>& candidates,
                     const std::vector<PointCluster>& clusters);

// Sum over neighbors and their entities of w_ij * (1[e<=e'] + 1[e'<=e]).
// e must be one of the vertex's candidate entities.
long long entityWeight(const std::string& e, int vertexIndex, const CoocGraph& g,
                       const Ontology& onto);

// Picks the max-weight entity per vertex. Single-candidate vertices are
// unambiguous by construction; multi-candidate vertices with all-zero
// weights stay ambiguous. Ties break by higher corpus point frequency of
// the entity, then lexicographic id.
std::vector<VertexAssignment> assignMeanings(const CoocGraph& g, const Ontology& onto);

// Graph + assignment artifact I/O.
void writeGraph(const std::string& path, const CoocGraph& g);
CoocGraph readGraph(const std::string& path);
void writeAssignments(const std::string& path, const std::vector<VertexAssignment>& items);
std::vector<VertexAssignment> readAssignments(const std::string& path);

}  // namespace vocemerge
