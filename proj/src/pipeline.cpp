#include "vocemerge/pipeline.hpp"

#include <filesystem>

#include "json.hpp"
#include "vocemerge/clusterer.hpp"
#include "vocemerge/disambiguator.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/evalreport.hpp"
#include "vocemerge/io.hpp"
#include "vocemerge/normalizer.hpp"
#include "vocemerge/ontology.hpp"
#include "vocemerge/postproc.hpp"
#include "vocemerge/specializer.hpp"
#include "vocemerge/util.hpp"
#include "vocemerge/vocab.hpp"

namespace vocemerge {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string inDir(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

PipelineConfig PipelineConfig::fromJsonFile(const std::string& path) {
  json doc;
  try {
    doc = json::parse(readTextFile(path));
  } catch (const VocabError&) {
    throw;
  } catch (const std::exception& e) {
    throw VocabError(ErrorCode::Config, path + ": invalid JSON: " + std::string(e.what()));
  }
  PipelineConfig cfg;
  cfg.ontology = doc.value("ontology", "");
  cfg.lexicon = doc.value("lexicon", "");
  cfg.annotations = doc.value("annotations", "");
  cfg.out = doc.value("out", "");
  cfg.theta = doc.value("theta", cfg.theta);
  cfg.n = doc.value("n", cfg.n);
  cfg.alpha = doc.value("alpha", cfg.alpha);
  if (doc.contains("alpha_grid")) cfg.alphaGrid = doc["alpha_grid"].get<std::vector<double>>();
  cfg.tau = doc.value("tau", cfg.tau);
  cfg.features = doc.value("features", "");
  cfg.groundTruth = doc.value("ground_truth", "");
  cfg.threads = doc.value("threads", cfg.threads);
  cfg.iterate = doc.value("iterate", cfg.iterate);
  cfg.specializeEval = doc.value("specialize_eval", cfg.specializeEval);
  return cfg;
}

void runNormalizeStage(const std::string& ontologyPath, const std::string& lexiconPath,
                       const std::string& annotationsPath, const std::string& outDir,
                       int threads) {
  logInfo("normalize: " + annotationsPath);
  auto onto = Ontology::load(ontologyPath, lexiconPath);
  auto annotations = readAnnotations(annotationsPath);
  auto candidates = normalizeCorpus(annotations, onto, threads);
  writeCandidates(inDir(outDir, "candidates.jsonl"), candidates);
}

void runClusterStage(const std::string& annotationsPath, double theta,
                     const std::string& outDir, int threads) {
  logInfo("cluster: theta=" + formatDouble(theta));
  auto annotations = readAnnotations(annotationsPath);
  auto result = clusterCorpus(annotations, theta, threads);
  writeClusters(inDir(outDir, "clusters.jsonl"), result.clusters);
  writeMergeTrace(inDir(outDir, "clusters_trace.jsonl"), result.traceByImage);
}

void runDisambiguateStage(const std::string& ontologyPath, const std::string& lexiconPath,
                          const std::string& candidatesPath, const std::string& clustersPath,
                          const std::string& outDir) {
  logInfo("disambiguate");
  auto onto = Ontology::load(ontologyPath, lexiconPath);
  auto candidates = readCandidates(candidatesPath);
  auto clusters = readClusters(clustersPath);
  auto graph = buildGraph(candidates, clusters);
  auto assignments = assignMeanings(graph, onto);
  writeGraph(inDir(outDir, "graph.json"), graph);
  writeAssignments(inDir(outDir, "assignments.jsonl"), assignments);
}

void runPostprocessStage(const std::string& ontologyPath, const std::string& lexiconPath,
                         const std::string& annotationsPath, const std::string& candidatesPath,
                         const std::string& graphPath, const std::string& assignmentsPath,
                         const std::string& outDir, bool iterate) {
  logInfo("postprocess");
  auto onto = Ontology::load(ontologyPath, lexiconPath);
  auto annotations = readAnnotations(annotationsPath);
  auto candidates = readCandidates(candidatesPath);
  auto graph = readGraph(graphPath);
  auto assignments = readAssignments(assignmentsPath);
  auto result = runPostprocessing(graph, assignments, candidates, annotations, onto, iterate);
  writeResolvedPoints(inDir(outDir, "resolved.jsonl"), result.resolved);
  writeStageStats(inDir(outDir, "stats.json"), result.stats);
  writeDiscoveredWords(inDir(outDir, "discovered.jsonl"), result.discovered);
  writeReview(inDir(outDir, "review.jsonl"), result.review);
}

void runVocabStage(const std::string& ontologyPath, const std::string& lexiconPath,
                   const std::string& resolvedPath, int n, double alpha,
                   const std::string& outDir) {
  logInfo("vocab: n=" + std::to_string(n) + " alpha=" + formatDouble(alpha));
  auto onto = Ontology::load(ontologyPath, lexiconPath);
  auto resolved = readResolvedPoints(resolvedPath);
  auto nv = buildNaturalVocabulary(resolved);
  auto nh = buildNaturalHierarchy(nv, onto);
  auto rv = reduceVocabulary(nv, nh, n, alpha);
  writeReducedVocabulary(inDir(outDir, "vocab.json"), rv);
}

void runSweepStage(const std::string& ontologyPath, const std::string& lexiconPath,
                   const std::string& resolvedPath, int n, const std::vector<double>& grid,
                   const std::string& outDir, int threads) {
  logInfo("sweep: n=" + std::to_string(n));
  auto onto = Ontology::load(ontologyPath, lexiconPath);
  auto resolved = readResolvedPoints(resolvedPath);
  auto nv = buildNaturalVocabulary(resolved);
  auto nh = buildNaturalHierarchy(nv, onto);
  auto rows = sweepAlpha(nv, nh, n, grid, threads);
  writeSweepCurve(inDir(outDir, "sweep.csv"), rows);
  std::string buf;
  for (const auto& rv : rows) {
    json rec;
    rec["n"] = rv.n;
    rec["alpha"] = rv.alpha;
    rec["entities"] = rv.entities;
    rec["coverage"] = rv.coverage;
    rec["specificity"] = rv.specificity;
    rec["objective"] = rv.objective;
    buf += rec.dump();
    buf += '\n';
  }
  writeTextFile(inDir(outDir, "sweep_vocabs.jsonl"), buf);
}

void runSpecializeStage(const std::string& ontologyPath, const std::string& lexiconPath,
                        const std::string& resolvedPath, const std::string& featuresPath,
                        double tau, bool stripToParentEval, const std::string& outDir) {
  logInfo("specialize: tau=" + formatDouble(tau));
  auto onto = Ontology::load(ontologyPath, lexiconPath);
  auto resolved = readResolvedPoints(resolvedPath);
  auto features = readFeatures(featuresPath);
  auto nv = buildNaturalVocabulary(resolved);
  auto nh = buildNaturalHierarchy(nv, onto);
  SpecializeOptions options;
  options.tau = tau;
  options.stripToParentEval = stripToParentEval;
  auto result = specializeCorpus(resolved, features, nh, options);
  writeSpecializationResults(inDir(outDir, "specialized.jsonl"), result.results);
  if (stripToParentEval) {
    writeAccuracyCurve(inDir(outDir, "specialize_curve.csv"), result.curve);
    json rec;
    rec["evaluated"] = result.evaluated;
    rec["accuracy"] = result.accuracy;
    rec["baseline_accuracy"] = result.baselineAccuracy;
    rec["skipped"] = result.skipped.size();
    writeTextFile(inDir(outDir, "specialize_summary.json"), rec.dump(2) + "\n");
  }
}

void runEvaluateStage(const std::string& ontologyPath, const std::string& lexiconPath,
                      const std::string& resolvedPath, const EvaluateOptions& options,
                      const std::string& outDir) {
  logInfo("evaluate");
  auto onto = Ontology::load(ontologyPath, lexiconPath);
  auto resolved = readResolvedPoints(resolvedPath);

  ReportInputs inputs;
  inputs.agreementAny = agreementLabels(resolved, AgreementThreshold::any());
  inputs.agreementAll = agreementLabels(resolved, AgreementThreshold::all());
  for (double f : {0.25, 0.5, 0.75}) {
    inputs.agreementAtFraction[formatDouble(f)] =
        agreementLabels(resolved, AgreementThreshold::at(f));
  }
  if (!resolved.empty()) inputs.distribution = classDistribution(resolved, 100);

  std::vector<CandidateSet> candidates;
  if (!options.groundTruth.empty()) {
    auto gt = readGroundTruth(options.groundTruth);
    const std::vector<CandidateSet>* candPtr = nullptr;
    if (!options.candidates.empty()) {
      candidates = readCandidates(options.candidates);
      candPtr = &candidates;
    }
    inputs.accuracy =
        disambiguationAccuracy(resolved, gt, onto, options.strictAccuracy, candPtr);
  }
  if (!options.reference.empty()) {
    std::map<std::string, std::set<std::string>> reference;
    for (const auto& line : splitChar(readTextFile(options.reference), '\n')) {
      if (trim(line).empty()) continue;
      json rec = json::parse(line);
      reference[rec.at("image_id").get<std::string>()] =
          rec.at("entities").get<std::set<std::string>>();
    }
    std::optional<std::set<std::string>> filter;
    if (!options.vocabFilter.empty()) {
      std::set<std::string> v;
      for (const auto& line : splitChar(readTextFile(options.vocabFilter), '\n')) {
        if (!trim(line).empty()) v.insert(trim(line));
      }
      filter = std::move(v);
    }
    std::map<std::string, std::string> labelMap;
    if (!options.labelMap.empty()) {
      for (const auto& line : splitChar(readTextFile(options.labelMap), '\n')) {
        if (trim(line).empty()) continue;
        auto cols = splitChar(line, '\t');
        if (cols.size() < 2) {
          throw VocabError(ErrorCode::Parse, options.labelMap + ": expected from<TAB>to");
        }
        labelMap[trim(cols[0])] = trim(cols[1]);
      }
    }
    inputs.precisionRecall = prAgainstReference(resolved, reference, filter, labelMap);
  }
  if (options.sweepN > 0 && !resolved.empty()) {
    auto nv = buildNaturalVocabulary(resolved);
    auto nh = buildNaturalHierarchy(nv, onto);
    std::vector<double> grid = options.sweepGrid;
    if (grid.empty()) grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    int n = std::min<int>(options.sweepN, static_cast<int>(nv.pointMass.size()));
    inputs.vocabSweep = sweepAlpha(nv, nh, n, grid);
    for (double alpha : grid) {
      inputs.greedySweep.push_back(greedyReduceVocabulary(nv, nh, n, alpha));
    }
  }
  renderReport(outDir, inputs);
}

void runPipeline(const PipelineConfig& config) {
  if (config.ontology.empty() || config.annotations.empty() || config.out.empty()) {
    throw VocabError(ErrorCode::Config, "pipeline needs ontology, annotations and out");
  }
  const std::string& out = config.out;
  fs::create_directories(out);
  runNormalizeStage(config.ontology, config.lexicon, config.annotations, out, config.threads);
  runClusterStage(config.annotations, config.theta, out, config.threads);
  runDisambiguateStage(config.ontology, config.lexicon, inDir(out, "candidates.jsonl"),
                       inDir(out, "clusters.jsonl"), out);
  runPostprocessStage(config.ontology, config.lexicon, config.annotations,
                      inDir(out, "candidates.jsonl"), inDir(out, "graph.json"),
                      inDir(out, "assignments.jsonl"), out, config.iterate);
  if (config.n > 0) {
    runVocabStage(config.ontology, config.lexicon, inDir(out, "resolved.jsonl"), config.n,
                  config.alpha, out);
    if (!config.alphaGrid.empty()) {
      runSweepStage(config.ontology, config.lexicon, inDir(out, "resolved.jsonl"), config.n,
                    config.alphaGrid, out, config.threads);
    }
  }
  if (!config.features.empty()) {
    runSpecializeStage(config.ontology, config.lexicon, inDir(out, "resolved.jsonl"),
                       config.features, config.tau, config.specializeEval, out);
  }
  if (!config.groundTruth.empty()) {
    EvaluateOptions evalOptions;
    evalOptions.groundTruth = config.groundTruth;
    evalOptions.candidates = inDir(out, "candidates.jsonl");
    runEvaluateStage(config.ontology, config.lexicon, inDir(out, "resolved.jsonl"),
                     evalOptions, out);
  }
}

}  // namespace vocemerge
