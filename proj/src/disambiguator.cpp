#include "vocemerge/disambiguator.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/io.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

namespace {
using json = nlohmann::ordered_json;
}

std::vector<std::pair<int, long long>> CoocGraph::neighbors(int i) const {
  std::vector<std::pair<int, long long>> out;
  for (const auto& [key, w] : edges) {
    if (key.first == i) out.push_back({key.second, w});
    else if (key.second == i) out.push_back({key.first, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

int CoocGraph::indexOf(const std::string& vertexId) const {
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].vertexId == vertexId) return static_cast<int>(i);
  }
  throw VocabError(ErrorCode::UnknownId, "unknown vertex id: " + vertexId);
}

const char* statusName(VertexStatus s) {
  switch (s) {
    case VertexStatus::Unambiguous: return "unambiguous";
    case VertexStatus::Ambiguous: return "ambiguous";
    case VertexStatus::Unrecognized: return "unrecognized";
  }
  return "unknown";
}

VertexStatus statusFromName(const std::string& name) {
  if (name == "unambiguous") return VertexStatus::Unambiguous;
  if (name == "ambiguous") return VertexStatus::Ambiguous;
  if (name == "unrecognized") return VertexStatus::Unrecognized;
  throw VocabError(ErrorCode::Parse, "unknown vertex status: " + name);
}

CoocGraph buildGraph(const std::vector<CandidateSet>& candidates,
                     const std::vector<PointCluster>& clusters) {
  CoocGraph g;
  std::map<std::string, const CandidateSet*> byPoint;
  for (const auto& c : candidates) byPoint[c.pointId] = &c;

  // Vertices keyed by candidate set, or by corrected string when empty.
  std::map<std::string, Vertex> byKey;
  for (const auto& c : candidates) {
    std::string key;
    if (c.candidates.empty()) {
      key = "U:" + c.corrected;
    } else {
      key = "E:" + join(c.candidates, ",");
    }
    auto& v = byKey[key];
    if (v.key.empty()) {
      v.key = key;
      v.entities = c.candidates;
      if (c.candidates.empty()) v.surface = c.corrected;
    }
    v.pointIds.push_back(c.pointId);
  }
  int idx = 0;
  for (auto& [key, v] : byKey) {
    std::sort(v.pointIds.begin(), v.pointIds.end());
    v.vertexId = "v" + std::to_string(idx);
    for (const auto& pid : v.pointIds) g.vertexOfPoint[pid] = idx;
    g.vertices.push_back(std::move(v));
    ++idx;
  }

  std::set<std::string> clustered;
  for (const auto& cl : clusters) {
    std::set<int> touched;
    for (const auto& pid : cl.pointIds) {
      auto it = g.vertexOfPoint.find(pid);
      if (it == g.vertexOfPoint.end()) {
        throw VocabError(ErrorCode::Inconsistency,
                         "cluster " + cl.clusterId + " references unknown point " + pid);
      }
      if (!clustered.insert(pid).second) {
        throw VocabError(ErrorCode::Inconsistency,
                         "point " + pid + " appears in more than one cluster");
      }
      touched.insert(it->second);
    }
    for (auto a = touched.begin(); a != touched.end(); ++a) {
      for (auto b = std::next(a); b != touched.end(); ++b) {
        g.edges[{*a, *b}] += 1;
      }
    }
  }
  if (clustered.size() != byPoint.size()) {
    throw VocabError(ErrorCode::Inconsistency, "clusters do not cover every point");
  }
  return g;
}

long long entityWeight(const std::string& e, int vertexIndex, const CoocGraph& g,
                       const Ontology& onto) {
  const Vertex& v = g.vertices.at(vertexIndex);
  if (std::find(v.entities.begin(), v.entities.end(), e) == v.entities.end()) {
    throw VocabError(ErrorCode::Validation,
                     "entity " + e + " is not a candidate of vertex " + v.vertexId);
  }
  long long total = 0;
  for (const auto& [j, w] : g.neighbors(vertexIndex)) {
    for (const auto& other : g.vertices[j].entities) {
      long long indicators = 0;
      if (onto.isSubclass(e, other)) ++indicators;
      if (onto.isSubclass(other, e)) ++indicators;
      total += w * indicators;
    }
  }
  return total;
}

std::vector<VertexAssignment> assignMeanings(const CoocGraph& g, const Ontology& onto) {
  // Corpus point frequency of an entity: points whose candidate set holds it.
  std::map<std::string, long long> pointFreq;
  for (const auto& v : g.vertices) {
    for (const auto& e : v.entities) {
      pointFreq[e] += static_cast<long long>(v.pointIds.size());
    }
  }

  std::vector<VertexAssignment> out;
  out.reserve(g.vertices.size());
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    const Vertex& v = g.vertices[i];
    VertexAssignment a;
    a.vertexId = v.vertexId;
    if (v.entities.empty()) {
      a.status = VertexStatus::Unrecognized;
      out.push_back(std::move(a));
      continue;
    }
    for (const auto& e : v.entities) {
      a.weights[e] = entityWeight(e, static_cast<int>(i), g, onto);
    }
    if (v.entities.size() == 1) {
      a.status = VertexStatus::Unambiguous;
      a.entity = v.entities.front();
      a.provenance = "direct";
      out.push_back(std::move(a));
      continue;
    }
    long long maxW = 0;
    for (const auto& [e, w] : a.weights) maxW = std::max(maxW, w);
    if (maxW == 0) {
      a.status = VertexStatus::Ambiguous;
      out.push_back(std::move(a));
      continue;
    }
    std::string best;
    long long bestFreq = -1;
    for (const auto& e : v.entities) {
      if (a.weights.at(e) != maxW) continue;
      long long f = pointFreq[e];
      if (best.empty() || f > bestFreq || (f == bestFreq && e < best)) {
        best = e;
        bestFreq = f;
      }
    }
    a.status = VertexStatus::Unambiguous;
    a.entity = best;
    a.provenance = "disambiguated";
    out.push_back(std::move(a));
  }
  return out;
}

void writeGraph(const std::string& path, const CoocGraph& g) {
  json doc;
  doc["vertices"] = json::array();
  for (const auto& v : g.vertices) {
    json rec;
    rec["vertex_id"] = v.vertexId;
    rec["key"] = v.key;
    rec["entities"] = v.entities;
    rec["point_ids"] = v.pointIds;
    if (v.entities.empty()) rec["surface"] = v.surface;
    doc["vertices"].push_back(rec);
  }
  doc["edges"] = json::array();
  for (const auto& [key, w] : g.edges) {
    doc["edges"].push_back(
        json::array({g.vertices[key.first].vertexId, g.vertices[key.second].vertexId, w}));
  }
  writeTextFile(path, doc.dump(2) + "\n");
}

CoocGraph readGraph(const std::string& path) {
  json doc;
  try {
    doc = json::parse(readTextFile(path));
  } catch (const std::exception& e) {
    throw VocabError(ErrorCode::Parse, path + ": invalid JSON: " + std::string(e.what()));
  }
  CoocGraph g;
  std::map<std::string, int> indexOf;
  for (const auto& rec : doc.at("vertices")) {
    Vertex v;
    v.vertexId = rec.at("vertex_id").get<std::string>();
    v.key = rec.at("key").get<std::string>();
    v.entities = rec.at("entities").get<std::vector<std::string>>();
    v.pointIds = rec.at("point_ids").get<std::vector<std::string>>();
    v.surface = rec.value("surface", "");
    indexOf[v.vertexId] = static_cast<int>(g.vertices.size());
    for (const auto& pid : v.pointIds) g.vertexOfPoint[pid] = indexOf[v.vertexId];
    g.vertices.push_back(std::move(v));
  }
  for (const auto& e : doc.at("edges")) {
    int i = indexOf.at(e.at(0).get<std::string>());
    int j = indexOf.at(e.at(1).get<std::string>());
    g.edges[{std::min(i, j), std::max(i, j)}] = e.at(2).get<long long>();
  }
  return g;
}

void writeAssignments(const std::string& path, const std::vector<VertexAssignment>& items) {
  std::string buf;
  for (const auto& a : items) {
    json rec;
    rec["vertex_id"] = a.vertexId;
    rec["status"] = statusName(a.status);
    rec["entity"] = a.entity ? json(*a.entity) : json(nullptr);
    json weights = json::object();
    for (const auto& [e, w] : a.weights) weights[e] = w;
    rec["weights"] = weights;
    if (!a.provenance.empty()) rec["provenance"] = a.provenance;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

std::vector<VertexAssignment> readAssignments(const std::string& path) {
  std::vector<VertexAssignment> out;
  std::ifstream in(path);
  if (!in) throw VocabError(ErrorCode::Io, "cannot open file: " + path);
  std::string line;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& e) {
      throw VocabError(ErrorCode::Parse,
                       path + ":" + std::to_string(lineNo) + ": invalid JSON: " + e.what());
    }
    VertexAssignment a;
    a.vertexId = rec.at("vertex_id").get<std::string>();
    a.status = statusFromName(rec.at("status").get<std::string>());
    if (!rec.at("entity").is_null()) a.entity = rec.at("entity").get<std::string>();
    for (const auto& [e, w] : rec.at("weights").items()) {
      a.weights[e] = w.get<long long>();
    }
    a.provenance = rec.value("provenance", "");
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace vocemerge
