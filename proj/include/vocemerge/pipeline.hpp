#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vocemerge {

// File-level stage runners. Every stage reads and writes the documented
// artifact formats, so chaining them equals running the subcommands by hand.
struct PipelineConfig {
  std::string ontology;
  std::string lexicon;
  std::string annotations;
  std::string out;
  double theta = 3.0;
  int n = 0;              // 0 = skip the vocabulary stage
  double alpha = 0.5;
  std::vector<double> alphaGrid;
  double tau = 2.0;
  std::string features;   // optional; enables the specialize stage
  std::string groundTruth;  // optional; enables the evaluate stage
  int threads = 1;
  bool iterate = false;
  bool specializeEval = true;  // strip-to-parent evaluation when specializing

  static PipelineConfig fromJsonFile(const std::string& path);
};

void runNormalizeStage(const std::string& ontologyPath, const std::string& lexiconPath,
                       const std::string& annotationsPath, const std::string& outDir,
                       int threads);
void runClusterStage(const std::string& annotationsPath, double theta,
                     const std::string& outDir, int threads);
void runDisambiguateStage(const std::string& ontologyPath, const std::string& lexiconPath,
                          const std::string& candidatesPath, const std::string& clustersPath,
                          const std::string& outDir);
void runPostprocessStage(const std::string& ontologyPath, const std::string& lexiconPath,
                         const std::string& annotationsPath, const std::string& candidatesPath,
                         const std::string& graphPath, const std::string& assignmentsPath,
                         const std::string& outDir, bool iterate);
void runVocabStage(const std::string& ontologyPath, const std::string& lexiconPath,
                   const std::string& resolvedPath, int n, double alpha,
                   const std::string& outDir);
void runSweepStage(const std::string& ontologyPath, const std::string& lexiconPath,
                   const std::string& resolvedPath, int n, const std::vector<double>& grid,
                   const std::string& outDir, int threads);
void runSpecializeStage(const std::string& ontologyPath, const std::string& lexiconPath,
                        const std::string& resolvedPath, const std::string& featuresPath,
                        double tau, bool stripToParentEval, const std::string& outDir);
struct EvaluateOptions {
  std::string groundTruth;
  std::string candidates;   // enables the polysemous-vertex breakdown
  std::string reference;    // per-image reference labels JSONL
  std::string vocabFilter;  // entity ids, one per line
  std::string labelMap;     // entity<TAB>reference_label TSV
  bool strictAccuracy = false;
  int sweepN = 0;           // > 0 adds exact + greedy vocabulary curves
  std::vector<double> sweepGrid;
};

void runEvaluateStage(const std::string& ontologyPath, const std::string& lexiconPath,
                      const std::string& resolvedPath, const EvaluateOptions& options,
                      const std::string& outDir);

// Runs normalize, cluster, disambiguate, postprocess and vocab/sweep in
// sequence, then the optional specialize and evaluate stages.
void runPipeline(const PipelineConfig& config);

}  // namespace vocemerge
