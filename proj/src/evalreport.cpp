#include "vocemerge/evalreport.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/io.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

namespace {

using json = nlohmann::ordered_json;

struct ImageUsage {
  std::set<std::string> annotators;
  std::map<std::string, std::set<std::string>> annotatorsByEntity;
};

std::map<std::string, ImageUsage> usageByImage(const std::vector<ResolvedPoint>& points) {
  std::map<std::string, ImageUsage> usage;
  for (const auto& p : points) {
    auto& u = usage[p.imageId];
    u.annotators.insert(p.annotatorId);
    u.annotatorsByEntity[p.entity].insert(p.annotatorId);
  }
  return usage;
}

}  // namespace

AgreementResult agreementLabels(const std::vector<ResolvedPoint>& points,
                                const AgreementThreshold& threshold) {
  AgreementResult out;
  auto usage = usageByImage(points);
  double totalClasses = 0.0;
  for (const auto& [imageId, u] : usage) {
    auto& labels = out.labelsByImage[imageId];
    const size_t annotators = u.annotators.size();
    for (const auto& [entity, users] : u.annotatorsByEntity) {
      bool keep = false;
      switch (threshold.mode) {
        case AgreementThreshold::Mode::Any: keep = !users.empty(); break;
        case AgreementThreshold::Mode::All: keep = users.size() == annotators; break;
        case AgreementThreshold::Mode::Fraction:
          keep = static_cast<double>(users.size()) >=
                 threshold.fraction * static_cast<double>(annotators);
          break;
      }
      if (keep) labels.insert(entity);
    }
    totalClasses += static_cast<double>(labels.size());
  }
  if (!usage.empty()) out.meanClassesPerImage = totalClasses / static_cast<double>(usage.size());
  return out;
}

ClassDistribution classDistribution(const std::vector<ResolvedPoint>& points, int topK) {
  if (points.empty()) throw VocabError(ErrorCode::EmptyCorpus, "class distribution of no points");
  ClassDistribution out;
  std::map<std::string, long long> counts;
  for (const auto& p : points) counts[p.entity] += 1;
  out.total = static_cast<long long>(points.size());
  for (const auto& [e, c] : counts) {
    out.ranked.push_back({e, c, static_cast<double>(c) / static_cast<double>(out.total)});
  }
  std::sort(out.ranked.begin(), out.ranked.end(),
            [](const ClassFrequency& a, const ClassFrequency& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.entity < b.entity;
            });
  out.topK = topK;
  long long covered = 0;
  for (int i = 0; i < topK && i < static_cast<int>(out.ranked.size()); ++i) {
    covered += out.ranked[i].count;
  }
  out.topKShare = static_cast<double>(covered) / static_cast<double>(out.total);
  return out;
}

std::vector<PrPoint> prAgainstReference(
    const std::vector<ResolvedPoint>& points,
    const std::map<std::string, std::set<std::string>>& reference,
    const std::optional<std::set<std::string>>& vocabularyFilter,
    const std::map<std::string, std::string>& labelMap) {
  auto usage = usageByImage(points);
  int maxAnnotators = 0;
  for (const auto& [imageId, u] : usage) {
    if (!reference.count(imageId)) {
      throw VocabError(ErrorCode::ImageMismatch,
                       "reference has no labels for image " + imageId);
    }
    maxAnnotators = std::max(maxAnnotators, static_cast<int>(u.annotators.size()));
  }

  std::vector<PrPoint> out;
  for (int level = 1; level <= maxAnnotators; ++level) {
    PrPoint pt;
    pt.agreementLevel = level;
    long long predicted = 0, matched = 0, referenced = 0;
    for (const auto& [imageId, u] : usage) {
      std::set<std::string> pred;
      for (const auto& [entity, users] : u.annotatorsByEntity) {
        if (static_cast<int>(users.size()) < level) continue;
        std::string label = entity;
        auto mapIt = labelMap.find(entity);
        if (mapIt != labelMap.end()) label = mapIt->second;
        if (vocabularyFilter && !vocabularyFilter->count(label)) continue;
        pred.insert(label);
      }
      const auto& ref = reference.at(imageId);
      predicted += static_cast<long long>(pred.size());
      referenced += static_cast<long long>(ref.size());
      for (const auto& label : pred) {
        if (ref.count(label)) ++matched;
      }
    }
    pt.predicted = predicted;
    pt.matched = matched;
    pt.referenced = referenced;
    if (predicted == 0) {
      pt.precision = 1.0;
      pt.zeroSupport = true;
    } else {
      pt.precision = static_cast<double>(matched) / static_cast<double>(predicted);
    }
    pt.recall = referenced == 0 ? 0.0
                                : static_cast<double>(matched) / static_cast<double>(referenced);
    out.push_back(pt);
  }
  return out;
}

DisambiguationAccuracy disambiguationAccuracy(
    const std::vector<ResolvedPoint>& resolved,
    const std::vector<GroundTruthRecord>& groundTruth, const Ontology& onto, bool strict,
    const std::vector<CandidateSet>* candidates) {
  std::map<std::string, const GroundTruthRecord*> gtByPoint;
  for (const auto& g : groundTruth) gtByPoint[g.pointId] = &g;
  std::map<std::string, size_t> candCount;
  if (candidates) {
    for (const auto& c : *candidates) candCount[c.pointId] = c.candidates.size();
  }

  DisambiguationAccuracy out;
  if (candidates) out.polysemous = AccuracyBreakdown{};
  for (const auto& p : resolved) {
    auto it = gtByPoint.find(p.pointId);
    if (it == gtByPoint.end()) {
      throw VocabError(ErrorCode::MissingGroundTruth,
                       "no ground truth for point " + p.pointId);
    }
    const auto& truth = it->second->trueEntity;
    bool correct = strict ? p.entity == truth : onto.isSubclass(truth, p.entity);
    out.overall.total += 1;
    out.overall.correct += correct ? 1 : 0;
    auto& byProv = out.byProvenance[p.provenance];
    byProv.total += 1;
    byProv.correct += correct ? 1 : 0;
    if (candidates && candCount[p.pointId] >= 2) {
      out.polysemous->total += 1;
      out.polysemous->correct += correct ? 1 : 0;
    }
  }
  auto finish = [](AccuracyBreakdown& b) {
    b.accuracy = b.total == 0 ? 0.0
                              : static_cast<double>(b.correct) / static_cast<double>(b.total);
  };
  finish(out.overall);
  for (auto& [prov, b] : out.byProvenance) finish(b);
  if (out.polysemous) finish(*out.polysemous);
  return out;
}

ReducedVocabulary greedyReduceVocabulary(const NaturalVocabulary& nv,
                                         const NaturalHierarchy& nh, int n, double alpha) {
  auto all = nv.entities();
  if (n < 1 || n > static_cast<int>(all.size())) {
    throw VocabError(ErrorCode::Validation, "vocabulary size out of range");
  }
  std::set<std::string> chosen;
  for (int step = 0; step < n; ++step) {
    std::string best;
    double bestObj = -1.0;
    for (const auto& e : all) {
      if (chosen.count(e)) continue;
      auto trial = chosen;
      trial.insert(e);
      double obj = alpha * coverage(trial, nv, nh) + (1.0 - alpha) * specificity(trial, nv, nh);
      if (obj > bestObj) {
        bestObj = obj;
        best = e;
      }
    }
    chosen.insert(best);
  }
  ReducedVocabulary out;
  out.entities.assign(chosen.begin(), chosen.end());
  out.n = n;
  out.alpha = alpha;
  out.coverage = coverage(chosen, nv, nh);
  out.specificity = specificity(chosen, nv, nh);
  out.objective = alpha * out.coverage + (1.0 - alpha) * out.specificity;
  return out;
}

void renderReport(const std::string& outDir, const ReportInputs& inputs) {
  namespace fs = std::filesystem;
  bool any = inputs.agreementAny || inputs.agreementAll || !inputs.agreementAtFraction.empty() ||
             inputs.distribution || !inputs.precisionRecall.empty() || inputs.accuracy ||
             !inputs.vocabSweep.empty() || inputs.specialization;
  if (!any) throw VocabError(ErrorCode::Validation, "no metric outputs to report");
  fs::create_directories(outDir);

  json doc;
  auto agreementJson = [](const AgreementResult& a) {
    json rec;
    rec["mean_classes_per_image"] = a.meanClassesPerImage;
    rec["images"] = a.labelsByImage.size();
    return rec;
  };
  if (inputs.agreementAny || inputs.agreementAll || !inputs.agreementAtFraction.empty()) {
    json agg = json::object();
    if (inputs.agreementAny) agg["any"] = agreementJson(*inputs.agreementAny);
    for (const auto& [key, a] : inputs.agreementAtFraction) agg[key] = agreementJson(a);
    if (inputs.agreementAll) agg["all"] = agreementJson(*inputs.agreementAll);
    doc["agreement"] = agg;
  }
  if (inputs.distribution) {
    json rec;
    rec["classes"] = inputs.distribution->ranked.size();
    rec["total_points"] = inputs.distribution->total;
    rec["top_k"] = inputs.distribution->topK;
    rec["top_k_share"] = inputs.distribution->topKShare;
    json head = json::array();
    for (size_t i = 0; i < inputs.distribution->ranked.size() && i < 25; ++i) {
      const auto& r = inputs.distribution->ranked[i];
      head.push_back({{"entity", r.entity}, {"count", r.count}, {"share", r.share}});
    }
    rec["head"] = head;
    doc["class_distribution"] = rec;
    std::string csv = "rank,entity,count,share\n";
    for (size_t i = 0; i < inputs.distribution->ranked.size(); ++i) {
      const auto& r = inputs.distribution->ranked[i];
      csv += std::to_string(i + 1) + "," + r.entity + "," + std::to_string(r.count) + "," +
             formatDouble(r.share) + "\n";
    }
    writeTextFile((fs::path(outDir) / "class_distribution.csv").string(), csv);
  }
  if (!inputs.precisionRecall.empty()) {
    json arr = json::array();
    std::string csv = "agreement_level,precision,recall\n";
    for (const auto& pt : inputs.precisionRecall) {
      json rec;
      rec["agreement_level"] = pt.agreementLevel;
      rec["precision"] = pt.precision;
      rec["recall"] = pt.recall;
      rec["predicted"] = pt.predicted;
      rec["matched"] = pt.matched;
      rec["referenced"] = pt.referenced;
      if (pt.zeroSupport) rec["zero_support"] = true;
      arr.push_back(rec);
      csv += std::to_string(pt.agreementLevel) + "," + formatDouble(pt.precision) + "," +
             formatDouble(pt.recall) + "\n";
    }
    doc["precision_recall"] = arr;
    writeTextFile((fs::path(outDir) / "precision_recall.csv").string(), csv);
  }
  if (inputs.accuracy) {
    json rec;
    auto breakdownJson = [](const AccuracyBreakdown& b) {
      return json{{"accuracy", b.accuracy}, {"correct", b.correct}, {"total", b.total}};
    };
    rec["overall"] = breakdownJson(inputs.accuracy->overall);
    json prov = json::object();
    for (const auto& [name, b] : inputs.accuracy->byProvenance) prov[name] = breakdownJson(b);
    rec["by_provenance"] = prov;
    if (inputs.accuracy->polysemous) {
      rec["polysemous"] = breakdownJson(*inputs.accuracy->polysemous);
    }
    doc["disambiguation_accuracy"] = rec;
  }
  if (!inputs.vocabSweep.empty()) {
    json arr = json::array();
    for (const auto& rv : inputs.vocabSweep) {
      arr.push_back({{"alpha", rv.alpha},
                     {"n", rv.n},
                     {"coverage", rv.coverage},
                     {"specificity", rv.specificity},
                     {"objective", rv.objective}});
    }
    doc["vocab_sweep"] = arr;
    writeSweepCurve((fs::path(outDir) / "coverage_specificity.csv").string(),
                    inputs.vocabSweep);
  }
  if (!inputs.greedySweep.empty()) {
    json arr = json::array();
    for (const auto& rv : inputs.greedySweep) {
      arr.push_back({{"alpha", rv.alpha},
                     {"n", rv.n},
                     {"coverage", rv.coverage},
                     {"specificity", rv.specificity},
                     {"objective", rv.objective}});
    }
    doc["greedy_baseline"] = arr;
  }
  if (inputs.specialization) {
    json rec;
    rec["evaluated"] = inputs.specialization->evaluated;
    rec["accuracy"] = inputs.specialization->accuracy;
    rec["baseline_accuracy"] = inputs.specialization->baselineAccuracy;
    rec["skipped"] = inputs.specialization->skipped.size();
    doc["specialization"] = rec;
    if (!inputs.specialization->curve.empty()) {
      writeAccuracyCurve((fs::path(outDir) / "accuracy_coverage.csv").string(),
                         inputs.specialization->curve);
    }
  }
  writeTextFile((fs::path(outDir) / "report.json").string(), doc.dump(2) + "\n");
}

}  // namespace vocemerge
