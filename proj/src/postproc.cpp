#include "vocemerge/postproc.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/io.hpp"

namespace vocemerge {

namespace {

using json = nlohmann::ordered_json;

StageRow tallyStage(const std::string& name,
                    const std::map<std::string, VertexStatus>& statusByPoint,
                    const std::map<std::string, std::string>& entityByPoint) {
  StageRow row;
  row.name = name;
  long long unambig = 0, ambig = 0, unrec = 0;
  std::set<std::string> classes;
  for (const auto& [pid, status] : statusByPoint) {
    switch (status) {
      case VertexStatus::Unambiguous:
        ++unambig;
        classes.insert(entityByPoint.at(pid));
        break;
      case VertexStatus::Ambiguous: ++ambig; break;
      case VertexStatus::Unrecognized: ++unrec; break;
    }
  }
  long long total = unambig + ambig + unrec;
  if (total > 0) {
    row.unambiguousPct = 100.0 * unambig / total;
    row.ambiguousPct = 100.0 * ambig / total;
    row.unrecognizedPct = 100.0 * unrec / total;
  }
  row.unambiguousPoints = unambig;
  row.unambiguousClasses = static_cast<long long>(classes.size());
  return row;
}

StageRow tallyVertexStage(const std::string& name, const CoocGraph& g,
                          const std::vector<VertexAssignment>& assignments) {
  std::map<std::string, VertexStatus> statusByPoint;
  std::map<std::string, std::string> entityByPoint;
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    const auto& a = assignments[i];
    for (const auto& pid : v.pointIds) {
      statusByPoint[pid] = a.status;
      if (a.status == VertexStatus::Unambiguous) entityByPoint[pid] = *a.entity;
    }
  }
  return tallyStage(name, statusByPoint, entityByPoint);
}

}  // namespace

std::vector<DiscoveredWord> resolveUnrecognized(std::vector<VertexAssignment>& assignments,
                                                const CoocGraph& g) {
  if (assignments.size() != g.vertices.size()) {
    throw VocabError(ErrorCode::Inconsistency, "assignment list does not match graph");
  }
  std::vector<VertexStatus> snapshot;
  snapshot.reserve(assignments.size());
  for (const auto& a : assignments) snapshot.push_back(a.status);

  std::vector<DiscoveredWord> discovered;
  for (size_t i = 0; i < assignments.size(); ++i) {
    if (snapshot[i] != VertexStatus::Unrecognized) continue;
    long long bestW = 0;
    int bestJ = -1;
    for (const auto& [j, w] : g.neighbors(static_cast<int>(i))) {
      if (snapshot[j] != VertexStatus::Unambiguous) continue;
      if (w > bestW ||
          (w == bestW && bestJ >= 0 && g.vertices[j].vertexId < g.vertices[bestJ].vertexId)) {
        bestW = w;
        bestJ = j;
      }
    }
    if (bestJ < 0) continue;
    assignments[i].status = VertexStatus::Unambiguous;
    assignments[i].entity = assignments[bestJ].entity;
    assignments[i].provenance = "adopted-unrecognized";
    discovered.push_back({g.vertices[i].surface, *assignments[bestJ].entity, bestW});
  }
  return discovered;
}

void resolveAmbiguous(std::vector<VertexAssignment>& assignments, const CoocGraph& g,
                      const std::vector<CandidateSet>& candidates, const Ontology& onto) {
  std::map<std::string, const CandidateSet*> byPoint;
  for (const auto& c : candidates) byPoint[c.pointId] = &c;

  // Rule A: collapse subclass chains to the most generic candidate.
  for (size_t i = 0; i < assignments.size(); ++i) {
    auto& a = assignments[i];
    if (a.status != VertexStatus::Ambiguous) continue;
    const auto& entities = g.vertices[i].entities;
    bool chain = true;
    for (size_t x = 0; x < entities.size() && chain; ++x) {
      for (size_t y = x + 1; y < entities.size() && chain; ++y) {
        if (!onto.isSubclass(entities[x], entities[y]) &&
            !onto.isSubclass(entities[y], entities[x])) {
          chain = false;
        }
      }
    }
    if (!chain) continue;
    std::string top = entities.front();
    for (const auto& e : entities) {
      if (onto.isSubclass(top, e)) top = e;
    }
    a.status = VertexStatus::Unambiguous;
    a.entity = top;
    a.provenance = "generalized-ambiguous";
  }

  // Rule B: exactly one candidate whose canonical name matches a member
  // point's corrected string.
  for (size_t i = 0; i < assignments.size(); ++i) {
    auto& a = assignments[i];
    if (a.status != VertexStatus::Ambiguous) continue;
    std::set<std::string> strings;
    for (const auto& pid : g.vertices[i].pointIds) {
      auto it = byPoint.find(pid);
      if (it != byPoint.end()) strings.insert(it->second->corrected);
    }
    std::vector<std::string> matches;
    for (const auto& e : g.vertices[i].entities) {
      if (strings.count(onto.canonicalName(e))) matches.push_back(e);
    }
    if (matches.size() == 1) {
      a.status = VertexStatus::Unambiguous;
      a.entity = matches.front();
      a.provenance = "string-matched";
    }
  }
}

PostprocResult runPostprocessing(const CoocGraph& g,
                                 const std::vector<VertexAssignment>& assignments,
                                 const std::vector<CandidateSet>& candidates,
                                 const std::vector<PointAnnotation>& annotations,
                                 const Ontology& onto, bool iterate) {
  PostprocResult result;
  result.stats.totalPoints = static_cast<long long>(annotations.size());

  // Align assignments with graph vertex order.
  std::map<std::string, const VertexAssignment*> byVertex;
  for (const auto& a : assignments) byVertex[a.vertexId] = &a;
  result.finalAssignments.reserve(g.vertices.size());
  for (const auto& v : g.vertices) {
    auto it = byVertex.find(v.vertexId);
    if (it == byVertex.end()) {
      throw VocabError(ErrorCode::Inconsistency, "no assignment for vertex " + v.vertexId);
    }
    result.finalAssignments.push_back(*it->second);
  }

  // Stage 1: per-point status straight from the candidate sets.
  {
    std::map<std::string, VertexStatus> statusByPoint;
    std::map<std::string, std::string> entityByPoint;
    for (const auto& c : candidates) {
      if (c.candidates.empty()) {
        statusByPoint[c.pointId] = VertexStatus::Unrecognized;
      } else if (c.candidates.size() == 1) {
        statusByPoint[c.pointId] = VertexStatus::Unambiguous;
        entityByPoint[c.pointId] = c.candidates.front();
      } else {
        statusByPoint[c.pointId] = VertexStatus::Ambiguous;
      }
    }
    result.stats.stages.push_back(
        tallyStage("matching_to_ontology", statusByPoint, entityByPoint));
  }

  result.stats.stages.push_back(
      tallyVertexStage("clustering_disambiguation", g, result.finalAssignments));

  result.discovered = resolveUnrecognized(result.finalAssignments, g);
  result.stats.stages.push_back(
      tallyVertexStage("postproc_unrecognized", g, result.finalAssignments));

  resolveAmbiguous(result.finalAssignments, g, candidates, onto);
  if (iterate) {
    auto more = resolveUnrecognized(result.finalAssignments, g);
    result.discovered.insert(result.discovered.end(), more.begin(), more.end());
    resolveAmbiguous(result.finalAssignments, g, candidates, onto);
  }
  result.stats.stages.push_back(
      tallyVertexStage("postproc_ambiguous", g, result.finalAssignments));

  std::map<std::string, const PointAnnotation*> annByPoint;
  for (const auto& p : annotations) annByPoint[p.pointId] = &p;

  for (size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    const auto& a = result.finalAssignments[i];
    if (a.status != VertexStatus::Unambiguous) {
      ReviewRecord r;
      r.vertexId = v.vertexId;
      r.status = statusName(a.status);
      r.key = v.key;
      r.entities = v.entities;
      r.pointIds = v.pointIds;
      result.review.push_back(std::move(r));
      continue;
    }
    for (const auto& pid : v.pointIds) {
      auto it = annByPoint.find(pid);
      if (it == annByPoint.end()) {
        throw VocabError(ErrorCode::Inconsistency, "no annotation for point " + pid);
      }
      const auto& p = *it->second;
      ResolvedPoint r;
      r.pointId = p.pointId;
      r.imageId = p.imageId;
      r.annotatorId = p.annotatorId;
      r.x = p.x;
      r.y = p.y;
      r.raw = p.raw;
      r.entity = *a.entity;
      r.provenance = a.provenance.empty() ? "direct" : a.provenance;
      result.resolved.push_back(std::move(r));
    }
  }
  std::sort(result.resolved.begin(), result.resolved.end(),
            [](const ResolvedPoint& a, const ResolvedPoint& b) { return a.pointId < b.pointId; });
  return result;
}

void writeReview(const std::string& path, const std::vector<ReviewRecord>& items) {
  std::string buf;
  for (const auto& r : items) {
    json rec;
    rec["vertex_id"] = r.vertexId;
    rec["status"] = r.status;
    rec["key"] = r.key;
    rec["entities"] = r.entities;
    rec["point_ids"] = r.pointIds;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

}  // namespace vocemerge
