// Command-line front end: each subcommand is one pipeline stage reading and
// writing the documented artifact formats; `pipeline` chains them.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/io.hpp"
#include "vocemerge/pipeline.hpp"
#include "vocemerge/simgen.hpp"
#include "vocemerge/util.hpp"

namespace {

using vocemerge::PipelineConfig;
using vocemerge::VocabError;

int failWith(const std::exception& e, const char* code) {
  nlohmann::ordered_json rec;
  rec["error"] = code;
  rec["detail"] = e.what();
  std::cerr << rec.dump() << "\n";
  return 1;
}

struct CommonArgs {
  std::string config;
  std::string ontology;
  std::string lexicon;
  std::string annotations;
  std::string out = "out";
  double theta = 3.0;
  double alpha = 0.5;
  int n = 0;
  double tau = 2.0;
  int threads = 1;
  uint64_t seed = 0;
};

// Flags override config-file values; only flags the user actually passed win.
PipelineConfig mergedConfig(const CLI::App* cmd, const CommonArgs& args) {
  PipelineConfig cfg;
  if (!args.config.empty()) cfg = PipelineConfig::fromJsonFile(args.config);
  auto passed = [&](const char* name) {
    auto* opt = cmd->get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (passed("--ontology") || cfg.ontology.empty()) cfg.ontology = args.ontology;
  if (passed("--lexicon") || cfg.lexicon.empty()) cfg.lexicon = args.lexicon;
  if (passed("--annotations") || cfg.annotations.empty()) cfg.annotations = args.annotations;
  if (passed("--out") || cfg.out.empty()) cfg.out = args.out;
  if (passed("--theta")) cfg.theta = args.theta;
  if (passed("--alpha")) cfg.alpha = args.alpha;
  if (passed("--n")) cfg.n = args.n;
  if (passed("--tau")) cfg.tau = args.tau;
  if (passed("--threads")) cfg.threads = args.threads;
  return cfg;
}

void addCommonOptions(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config, "JSON config file; flags override it");
  cmd->add_option("--ontology", args->ontology, "ontology JSONL file");
  cmd->add_option("--lexicon", args->lexicon, "lexicon TSV file");
  cmd->add_option("--annotations", args->annotations, "annotations JSONL file");
  cmd->add_option("--out", args->out, "output directory");
  cmd->add_option("--theta", args->theta, "cluster acceptance threshold");
  cmd->add_option("--alpha", args->alpha, "coverage/specificity trade-off");
  cmd->add_option("--n", args->n, "reduced vocabulary size");
  cmd->add_option("--tau", args->tau, "specialization confidence threshold");
  cmd->add_option("--threads", args->threads, "worker threads (never changes output)");
  cmd->add_option("--seed", args->seed, "generator seed (simulate only)");
}

std::vector<double> parseGrid(const std::string& csv) {
  std::vector<double> grid;
  for (const auto& part : vocemerge::splitChar(csv, ',')) {
    if (!vocemerge::trim(part).empty()) grid.push_back(std::stod(part));
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vocemerge: turns free-form point annotations into an "
               "ontology-grounded natural vocabulary"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* normalize = app.add_subcommand("normalize", "map raw strings to candidate entities");
  auto* cluster = app.add_subcommand("cluster", "group same-object clicks per image");
  auto* disambiguate =
      app.add_subcommand("disambiguate", "build the co-occurrence graph and assign meanings");
  auto* postprocess =
      app.add_subcommand("postprocess", "resolve unrecognized and ambiguous vertices");
  auto* vocab = app.add_subcommand("vocab", "extract the optimal reduced vocabulary");
  auto* sweep = app.add_subcommand("sweep", "sweep alpha over the reduced vocabulary");
  auto* specialize = app.add_subcommand("specialize", "make labels more specific via features");
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic annotated corpus");
  auto* evaluate = app.add_subcommand("evaluate", "compute evaluation metrics and reports");
  auto* pipeline = app.add_subcommand("pipeline", "run every stage in sequence");

  std::string candidatesPath, clustersPath, graphPath, assignmentsPath, resolvedPath;
  std::string featuresPath, groundTruthPath, referencePath, vocabFilterPath, labelMapPath;
  std::string alphaGridCsv = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  std::string pipelineGridCsv, evalGridCsv;
  bool iterate = false;
  bool workedExampleFlag = false;
  bool applyMode = false;
  bool strictAccuracy = false;
  int evalSweepN = 0;

  for (auto* cmd : {normalize, cluster, disambiguate, postprocess, vocab, sweep, specialize,
                    simulate, evaluate, pipeline}) {
    addCommonOptions(cmd, &args);
  }
  disambiguate->add_option("--candidates", candidatesPath, "candidates JSONL");
  disambiguate->add_option("--clusters", clustersPath, "clusters JSONL");
  postprocess->add_option("--candidates", candidatesPath, "candidates JSONL");
  postprocess->add_option("--graph", graphPath, "co-occurrence graph JSON");
  postprocess->add_option("--assignments", assignmentsPath, "assignments JSONL");
  postprocess->add_flag("--iterate", iterate, "re-run the resolution rules once more");
  vocab->add_option("--resolved", resolvedPath, "resolved points JSONL");
  sweep->add_option("--resolved", resolvedPath, "resolved points JSONL");
  sweep->add_option("--alpha-grid", alphaGridCsv, "comma-separated alpha values");
  specialize->add_option("--resolved", resolvedPath, "resolved points JSONL");
  specialize->add_option("--features", featuresPath, "feature CSV");
  specialize->add_flag("--apply", applyMode,
                       "specialize parent-labeled points instead of evaluating");
  simulate->add_flag("--worked-example", workedExampleFlag,
                     "emit the fixed hand-checkable 3-image corpus");
  evaluate->add_option("--resolved", resolvedPath, "resolved points JSONL");
  evaluate->add_option("--ground-truth", groundTruthPath, "ground truth JSONL");
  evaluate->add_option("--candidates", candidatesPath, "candidates JSONL (polysemy breakdown)");
  evaluate->add_option("--reference", referencePath, "per-image reference labels JSONL");
  evaluate->add_option("--vocab-filter", vocabFilterPath, "entity ids, one per line");
  evaluate->add_option("--label-map", labelMapPath, "entity<TAB>reference_label TSV");
  evaluate->add_flag("--strict", strictAccuracy, "require exact entity equality for accuracy");
  evaluate->add_option("--sweep-n", evalSweepN,
                       "add exact and greedy vocabulary curves of this size to the report");
  evaluate->add_option("--sweep-grid", evalGridCsv, "alpha grid for --sweep-n");
  pipeline->add_option("--features", featuresPath, "feature CSV (enables specialization)");
  pipeline->add_option("--ground-truth", groundTruthPath, "ground truth JSONL (enables evaluation)");
  pipeline->add_option("--alpha-grid", pipelineGridCsv, "comma-separated alphas (enables sweep)");
  pipeline->add_flag("--iterate", iterate, "re-run the resolution rules once more");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (normalize->parsed()) {
      auto cfg = mergedConfig(normalize, args);
      vocemerge::runNormalizeStage(cfg.ontology, cfg.lexicon, cfg.annotations, cfg.out,
                                   cfg.threads);
    } else if (cluster->parsed()) {
      auto cfg = mergedConfig(cluster, args);
      vocemerge::runClusterStage(cfg.annotations, cfg.theta, cfg.out, cfg.threads);
    } else if (disambiguate->parsed()) {
      auto cfg = mergedConfig(disambiguate, args);
      vocemerge::runDisambiguateStage(cfg.ontology, cfg.lexicon, candidatesPath, clustersPath,
                                      cfg.out);
    } else if (postprocess->parsed()) {
      auto cfg = mergedConfig(postprocess, args);
      vocemerge::runPostprocessStage(cfg.ontology, cfg.lexicon, cfg.annotations, candidatesPath,
                                     graphPath, assignmentsPath, cfg.out, iterate);
    } else if (vocab->parsed()) {
      auto cfg = mergedConfig(vocab, args);
      vocemerge::runVocabStage(cfg.ontology, cfg.lexicon, resolvedPath, cfg.n, cfg.alpha,
                               cfg.out);
    } else if (sweep->parsed()) {
      auto cfg = mergedConfig(sweep, args);
      vocemerge::runSweepStage(cfg.ontology, cfg.lexicon, resolvedPath, cfg.n,
                               parseGrid(alphaGridCsv), cfg.out, cfg.threads);
    } else if (specialize->parsed()) {
      auto cfg = mergedConfig(specialize, args);
      vocemerge::runSpecializeStage(cfg.ontology, cfg.lexicon, resolvedPath, featuresPath,
                                    cfg.tau, !applyMode, cfg.out);
    } else if (simulate->parsed()) {
      auto cfg = mergedConfig(simulate, args);
      if (workedExampleFlag) {
        vocemerge::writeWorkedExample(cfg.out);
      } else {
        if (args.config.empty()) {
          throw VocabError(vocemerge::ErrorCode::Config, "simulate needs --config");
        }
        auto simCfg = vocemerge::GeneratorConfig::fromJsonFile(args.config);
        auto onto = vocemerge::Ontology::load(simCfg.ontologyPath, simCfg.lexiconPath);
        auto corpus = vocemerge::generateCorpus(simCfg, args.seed, onto);
        vocemerge::writeCorpus(cfg.out, corpus);
      }
    } else if (evaluate->parsed()) {
      auto cfg = mergedConfig(evaluate, args);
      vocemerge::EvaluateOptions options;
      options.groundTruth = groundTruthPath;
      options.candidates = candidatesPath;
      options.reference = referencePath;
      options.vocabFilter = vocabFilterPath;
      options.labelMap = labelMapPath;
      options.strictAccuracy = strictAccuracy;
      options.sweepN = evalSweepN;
      if (!evalGridCsv.empty()) options.sweepGrid = parseGrid(evalGridCsv);
      vocemerge::runEvaluateStage(cfg.ontology, cfg.lexicon, resolvedPath, options, cfg.out);
    } else if (pipeline->parsed()) {
      auto cfg = mergedConfig(pipeline, args);
      if (pipeline->count("--features") > 0) cfg.features = featuresPath;
      if (pipeline->count("--ground-truth") > 0) cfg.groundTruth = groundTruthPath;
      if (pipeline->count("--alpha-grid") > 0) cfg.alphaGrid = parseGrid(pipelineGridCsv);
      if (pipeline->count("--iterate") > 0) cfg.iterate = iterate;
      vocemerge::runPipeline(cfg);
    }
  } catch (const VocabError& e) {
    return failWith(e, e.codeName());
  } catch (const std::exception& e) {
    return failWith(e, "runtime");
  }
  return 0;
}
