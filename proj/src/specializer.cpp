#include "vocemerge/specializer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

namespace {

using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> maybeNormalize(const std::vector<double>& v, bool unitNorm) {
  if (!unitNorm) return v;
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) return v;
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / norm;
  return out;
}

double euclidFeature(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

SpecializationResult specializePoint(const std::string& pointId, const std::string& fromEntity,
                                     const std::vector<PoolPoint>& pool,
                                     const FeatureStore& features, double tau, bool unitNorm) {
  std::set<std::string> classes;
  for (const auto& q : pool) classes.insert(q.childEntity);
  if (classes.size() < 2) {
    throw VocabError(ErrorCode::InsufficientChildren,
                     "pool for point " + pointId + " spans fewer than 2 child classes");
  }
  auto target = maybeNormalize(features.get(pointId), unitNorm);

  // Nearest pool point overall, ties by pool point id.
  std::string nearestId, nearestClass;
  double nearestDist = kInf;
  std::map<std::string, double> nearestPerClass;
  for (const auto& q : pool) {
    double d = euclidFeature(target, maybeNormalize(features.get(q.pointId), unitNorm));
    auto it = nearestPerClass.find(q.childEntity);
    if (it == nearestPerClass.end() || d < it->second) nearestPerClass[q.childEntity] = d;
    if (d < nearestDist || (d == nearestDist && q.pointId < nearestId)) {
      nearestDist = d;
      nearestId = q.pointId;
      nearestClass = q.childEntity;
    }
  }
  double secondDist = kInf;
  for (const auto& [cls, d] : nearestPerClass) {
    if (cls != nearestClass) secondDist = std::min(secondDist, d);
  }

  SpecializationResult r;
  r.pointId = pointId;
  r.fromEntity = fromEntity;
  r.toEntity = nearestClass;
  r.nearestDistance = nearestDist;
  r.secondDistance = secondDist;
  if (nearestDist == 0.0) {
    r.confidence = secondDist == 0.0 ? 1.0 : kInf;
  } else {
    r.confidence = secondDist / nearestDist;
  }
  r.applied = std::isinf(tau) ? false : r.confidence >= tau;
  return r;
}

SpecializeCorpusResult specializeCorpus(const std::vector<ResolvedPoint>& points,
                                        const FeatureStore& features,
                                        const NaturalHierarchy& nh,
                                        const SpecializeOptions& options) {
  SpecializeCorpusResult out;

  std::map<std::string, long long> countByEntity;
  for (const auto& p : points) countByEntity[p.entity] += 1;

  // Eligible parents: enough points of their own and >= minChildren child
  // classes with >= minChildExamples points each.
  std::set<std::string> eligible;
  for (const auto& [parent, kids] : nh.children) {
    if (parent.empty()) continue;
    if (countByEntity[parent] < options.minParentCount) continue;
    int strongChildren = 0;
    for (const auto& c : kids) {
      if (countByEntity[c] >= options.minChildExamples) ++strongChildren;
    }
    if (strongChildren >= options.minChildren) eligible.insert(parent);
  }

  // Child-labeled points per eligible parent, sorted by point id.
  std::map<std::string, std::vector<PoolPoint>> poolByParent;
  for (const auto& p : points) {
    auto it = nh.parent.find(p.entity);
    if (it == nh.parent.end() || it->second.empty()) continue;
    if (eligible.count(it->second)) poolByParent[it->second].push_back({p.pointId, p.entity});
  }
  for (auto& [parent, pool] : poolByParent) {
    std::sort(pool.begin(), pool.end(),
              [](const PoolPoint& a, const PoolPoint& b) { return a.pointId < b.pointId; });
  }

  if (!options.stripToParentEval) {
    for (const auto& p : points) {
      if (!eligible.count(p.entity)) continue;
      auto it = poolByParent.find(p.entity);
      if (it == poolByParent.end()) {
        out.skipped.push_back({p.pointId, "no child-labeled points"});
        continue;
      }
      try {
        out.results.push_back(specializePoint(p.pointId, p.entity, it->second, features,
                                              options.tau, options.unitNorm));
      } catch (const VocabError& e) {
        out.skipped.push_back({p.pointId, e.codeName()});
      }
    }
    return out;
  }

  // Evaluation: pretend each child-labeled point carries its parent's label.
  struct Eval {
    SpecializationResult result;
    bool correct = false;
  };
  std::vector<Eval> evals;
  std::map<std::string, std::string> mostFrequentChild;
  for (const auto& parent : eligible) {
    const auto& pool = poolByParent[parent];
    std::map<std::string, long long> childCount;
    for (const auto& q : pool) childCount[q.childEntity] += 1;
    std::string best;
    long long bestCount = -1;
    for (const auto& [c, cnt] : childCount) {
      if (cnt > bestCount) {
        best = c;
        bestCount = cnt;
      }
    }
    mostFrequentChild[parent] = best;
  }
  long long baselineCorrect = 0;
  for (const auto& p : points) {
    auto it = nh.parent.find(p.entity);
    if (it == nh.parent.end() || it->second.empty() || !eligible.count(it->second)) continue;
    const std::string& parent = it->second;
    std::vector<PoolPoint> pool;
    for (const auto& q : poolByParent[parent]) {
      if (q.pointId != p.pointId) pool.push_back(q);
    }
    try {
      Eval e;
      e.result = specializePoint(p.pointId, parent, pool, features, options.tau,
                                 options.unitNorm);
      e.correct = e.result.toEntity == p.entity;
      if (mostFrequentChild[parent] == p.entity) ++baselineCorrect;
      evals.push_back(std::move(e));
    } catch (const VocabError& e) {
      out.skipped.push_back({p.pointId, e.codeName()});
    }
  }

  std::sort(evals.begin(), evals.end(), [](const Eval& a, const Eval& b) {
    if (a.result.confidence != b.result.confidence) {
      return a.result.confidence > b.result.confidence;
    }
    return a.result.pointId < b.result.pointId;
  });
  long long correct = 0;
  out.evaluated = static_cast<long long>(evals.size());
  for (size_t i = 0; i < evals.size(); ++i) {
    if (evals[i].correct) ++correct;
    out.curve.push_back({static_cast<double>(i + 1) / static_cast<double>(evals.size()),
                         static_cast<double>(correct) / static_cast<double>(i + 1)});
    out.results.push_back(evals[i].result);
  }
  if (!evals.empty()) {
    out.accuracy = static_cast<double>(correct) / static_cast<double>(evals.size());
    out.baselineAccuracy =
        static_cast<double>(baselineCorrect) / static_cast<double>(evals.size());
  }
  return out;
}

void writeSpecializationResults(const std::string& path,
                                const std::vector<SpecializationResult>& items) {
  std::string buf;
  for (const auto& r : items) {
    json rec;
    rec["point_id"] = r.pointId;
    rec["from"] = r.fromEntity;
    rec["to"] = r.toEntity;
    rec["confidence"] = std::isinf(r.confidence) ? json("inf") : json(r.confidence);
    rec["applied"] = r.applied;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(path, buf);
}

void writeAccuracyCurve(const std::string& path, const std::vector<CurvePoint>& curve) {
  std::string buf = "coverage,accuracy\n";
  for (const auto& c : curve) {
    buf += formatDouble(c.coverage) + "," + formatDouble(c.accuracy) + "\n";
  }
  writeTextFile(path, buf);
}

}  // namespace vocemerge
