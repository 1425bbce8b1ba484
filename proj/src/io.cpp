#include "vocemerge/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

namespace {

using json = nlohmann::ordered_json;

json parseLine(const std::string& path, size_t lineNo, const std::string& line) {
  try {
    return json::parse(line);
  } catch (const std::exception& e) {
    throw VocabError(ErrorCode::Parse,
                     path + ":" + std::to_string(lineNo) + ": invalid JSON: " + e.what());
  }
}

template <typename Fn>
void forEachLine(const std::string& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw VocabError(ErrorCode::Io, "cannot open file: " + path);
  std::string line;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) continue;
    fn(lineNo, line);
  }
}

json scoreToJson(double score) {
  if (std::isinf(score)) return json("inf");
  return json(score);
}

double scoreFromJson(const json& v, const std::string& ctx) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw VocabError(ErrorCode::Parse, ctx + ": bad score value");
  }
  return v.get<double>();
}

}  // namespace

std::vector<PointAnnotation> readAnnotations(const std::string& path) {
  std::vector<PointAnnotation> out;
  std::set<std::string> seen;
  forEachLine(path, [&](size_t lineNo, const std::string& line) {
    json rec = parseLine(path, lineNo, line);
    PointAnnotation p;
    try {
      p.pointId = rec.at("point_id").get<std::string>();
      p.imageId = rec.at("image_id").get<std::string>();
      p.annotatorId = rec.at("annotator_id").get<std::string>();
      p.x = rec.at("x").get<double>();
      p.y = rec.at("y").get<double>();
      p.raw = rec.at("raw").get<std::string>();
    } catch (const json::exception& e) {
      throw VocabError(ErrorCode::Parse,
                       path + ":" + std::to_string(lineNo) + ": " + e.what());
    }
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) {
      throw VocabError(ErrorCode::Validation, path + ":" + std::to_string(lineNo) +
                                                  ": coordinates out of [0,1]");
    }
    if (trim(p.raw).empty()) {
      throw VocabError(ErrorCode::Validation,
                       path + ":" + std::to_string(lineNo) + ": empty raw string");
    }
    if (!seen.insert(p.pointId).second) {
      throw VocabError(ErrorCode::Validation, path + ":" + std::to_string(lineNo) +
                                                  ": duplicate point id " + p.pointId);
    }
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<CandidateSet> readCandidates(const std::string& path) {
  std::vector<CandidateSet> out;
  forEachLine(path, [&](size_t lineNo, const std::string& line) {
    json rec = parseLine(path, lineNo, line);
    CandidateSet c;
    try {
      c.pointId = rec.at("point_id").get<std::string>();
      c.candidates = rec.at("candidates").get<std::vector<std::string>>();
      c.corrected = rec.at("corrected").get<std::string>();
      c.head = rec.at("head").get<std::string>();
      c.modifiers = rec.at("modifiers").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw VocabError(ErrorCode::Parse,
                       path + ":" + std::to_string(lineNo) + ": " + e.what());
    }
    out.push_back(std::move(c));
  });
  return out;
}

std::vector<PointCluster> readClusters(const std::string& path) {
  std::vector<PointCluster> out;
  forEachLine(path, [&](size_t lineNo, const std::string& line) {
    json rec = parseLine(path, lineNo, line);
    PointCluster c;
    try {
      c.clusterId = rec.at("cluster_id").get<std::string>();
      c.imageId = rec.at("image_id").get<std::string>();
      c.pointIds = rec.at("point_ids").get<std::vector<std::string>>();
      c.score = scoreFromJson(rec.at("score"), path + ":" + std::to_string(lineNo));
    } catch (const json::exception& e) {
      throw VocabError(ErrorCode::Parse,
                       path + ":" + std::to_string(lineNo) + ": " + e.what());
    }
    out.push_back(std::move(c));
  });
  return out;
}

std::vector<ResolvedPoint> readResolvedPoints(const std::string& path) {
  std::vector<ResolvedPoint> out;
  forEachLine(path, [&](size_t lineNo, const std::string& line) {
    json rec = parseLine(path, lineNo, line);
    ResolvedPoint p;
    try {
      p.pointId = rec.at("point_id").get<std::string>();
      p.imageId = rec.at("image_id").get<std::string>();
      p.annotatorId = rec.at("annotator_id").get<std::string>();
      p.x = rec.at("x").get<double>();
      p.y = rec.at("y").get<double>();
      p.raw = rec.at("raw").get<std::string>();
      p.entity = rec.at("entity").get<std::string>();
      p.provenance = rec.at("provenance").get<std::string>();
    } catch (const json::exception& e) {
      throw VocabError(ErrorCode::Parse,
                       path + ":" + std::to_string(lineNo) + ": " + e.what());
    }
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<GroundTruthRecord> readGroundTruth(const std::string& path) {
  std::vector<GroundTruthRecord> out;
  forEachLine(path, [&](size_t lineNo, const std::string& line) {
    json rec = parseLine(path, lineNo, line);
    GroundTruthRecord g;
    try {
      g.pointId = rec.at("point_id").get<std::string>();
      g.objectId = rec.at("object_id").get<std::string>();
      g.trueEntity = rec.at("true_entity").get<std::string>();
      g.intendedEntity = rec.value("intended_entity", "");
    } catch (const json::exception& e) {
      throw VocabError(ErrorCode::Parse,
                       path + ":" + std::to_string(lineNo) + ": " + e.what());
    }
    out.push_back(std::move(g));
  });
  return out;
}

void writeAnnotations(const std::string& path, const std::vector<PointAnnotation>& items) {
  std::string buf;
  for (const auto& p : items) {
    json rec;
    rec["point_id"] = p.pointId;
    rec["image_id"] = p.imageId;
    rec["annotator_id"] = p.annotatorId;
    rec["x"] = p.x;
    rec["y"] = p.y;
    rec["raw"] = p.raw;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeCandidates(const std::string& path, const std::vector<CandidateSet>& items) {
  std::string buf;
  for (const auto& c : items) {
    json rec;
    rec["point_id"] = c.pointId;
    rec["candidates"] = c.candidates;
    rec["corrected"] = c.corrected;
    rec["head"] = c.head;
    rec["modifiers"] = c.modifiers;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeClusters(const std::string& path, const std::vector<PointCluster>& items) {
  std::string buf;
  for (const auto& c : items) {
    json rec;
    rec["cluster_id"] = c.clusterId;
    rec["image_id"] = c.imageId;
    rec["point_ids"] = c.pointIds;
    rec["score"] = scoreToJson(c.score);
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeMergeTrace(const std::string& path,
                     const std::map<std::string, std::vector<MergeStep>>& traceByImage) {
  std::string buf;
  for (const auto& [imageId, steps] : traceByImage) {
    for (const auto& s : steps) {
      json rec;
      rec["image_id"] = imageId;
      rec["point_ids"] = s.pointIds;
      rec["score"] = scoreToJson(s.score);
      buf += rec.dump();
      buf += '\n';
    }
  }
  writeTextFile(path, buf);
}

void writeResolvedPoints(const std::string& path, const std::vector<ResolvedPoint>& items) {
  std::string buf;
  for (const auto& p : items) {
    json rec;
    rec["point_id"] = p.pointId;
    rec["image_id"] = p.imageId;
    rec["annotator_id"] = p.annotatorId;
    rec["x"] = p.x;
    rec["y"] = p.y;
    rec["raw"] = p.raw;
    rec["entity"] = p.entity;
    rec["provenance"] = p.provenance;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeGroundTruth(const std::string& path, const std::vector<GroundTruthRecord>& items) {
  std::string buf;
  for (const auto& g : items) {
    json rec;
    rec["point_id"] = g.pointId;
    rec["object_id"] = g.objectId;
    rec["true_entity"] = g.trueEntity;
    if (!g.intendedEntity.empty()) rec["intended_entity"] = g.intendedEntity;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeDiscoveredWords(const std::string& path, const std::vector<DiscoveredWord>& items) {
  std::string buf;
  for (const auto& w : items) {
    json rec;
    rec["surface"] = w.surface;
    rec["entity"] = w.entity;
    rec["support_weight"] = w.supportWeight;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeStageStats(const std::string& path, const StageStats& stats) {
  json rec;
  rec["total_points"] = stats.totalPoints;
  rec["stages"] = json::array();
  for (const auto& s : stats.stages) {
    json row;
    row["name"] = s.name;
    row["unambiguous_pct"] = s.unambiguousPct;
    row["ambiguous_pct"] = s.ambiguousPct;
    row["unrecognized_pct"] = s.unrecognizedPct;
    row["unambiguous_points"] = s.unambiguousPoints;
    row["unambiguous_classes"] = s.unambiguousClasses;
    rec["stages"].push_back(row);
  }
  writeTextFile(path, rec.dump(2) + "\n");
}

const std::vector<double>& FeatureStore::get(const std::string& pointId) const {
  auto it = vectors.find(pointId);
  if (it == vectors.end()) {
    throw VocabError(ErrorCode::MissingFeature, "no feature vector for point " + pointId);
  }
  return it->second;
}

FeatureStore readFeatures(const std::string& path) {
  FeatureStore store;
  std::ifstream in(path);
  if (!in) throw VocabError(ErrorCode::Io, "cannot open feature file: " + path);
  std::string line;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) continue;
    auto cols = splitChar(line, ',');
    if (cols.size() < 2) {
      throw VocabError(ErrorCode::Parse,
                       path + ":" + std::to_string(lineNo) + ": expected point_id,v1,...,vd");
    }
    std::vector<double> vec;
    vec.reserve(cols.size() - 1);
    for (size_t i = 1; i < cols.size(); ++i) {
      try {
        vec.push_back(std::stod(cols[i]));
      } catch (const std::exception&) {
        throw VocabError(ErrorCode::Parse,
                         path + ":" + std::to_string(lineNo) + ": bad feature component");
      }
      if (!std::isfinite(vec.back())) {
        throw VocabError(ErrorCode::Validation,
                         path + ":" + std::to_string(lineNo) + ": non-finite feature component");
      }
    }
    if (store.dim == 0) store.dim = vec.size();
    if (vec.size() != store.dim) {
      throw VocabError(ErrorCode::Validation,
                       path + ":" + std::to_string(lineNo) + ": inconsistent feature dimension");
    }
    store.vectors[trim(cols[0])] = std::move(vec);
  }
  return store;
}

void writeFeatures(const std::string& path, const FeatureStore& store) {
  std::string buf;
  for (const auto& [id, vec] : store.vectors) {
    buf += id;
    for (double v : vec) {
      buf += ',';
      buf += formatDouble(v);
    }
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeTextFile(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw VocabError(ErrorCode::Io, "cannot write file: " + tmp.string());
    out << content;
    if (!out) throw VocabError(ErrorCode::Io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw VocabError(ErrorCode::Io, "cannot move " + tmp.string() + " to " + path);
  }
}

std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VocabError(ErrorCode::Io, "cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace vocemerge
