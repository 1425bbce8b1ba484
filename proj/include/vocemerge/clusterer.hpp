#pragma once

#include <map>
#include <string>
#include <vector>

#include "vocemerge/types.hpp"

namespace vocemerge {

double euclid(double x1, double y1, double x2, double y2);

// Isolation ratio of a candidate cluster: min distance to any outside point
// over max pairwise distance inside. Conventions: no outside points -> +inf;
// an outside point coinciding with a member -> 0; otherwise a zero diameter
// (singletons, coincident members) -> +inf.
double clusterScore(const std::vector<const PointAnnotation*>& cluster,
                    const std::vector<const PointAnnotation*>& others);

struct ImageClusterResult {
  std::vector<PointCluster> clusters;  // partition of the image's points
  std::vector<MergeStep> trace;        // every merge performed, in order
};

// Agglomerative clustering of one image's points: repeatedly merge the two
// clusters whose union scores highest (never uniting two points of the same
// annotator), then accept the maximal recorded unions with score >= theta.
// The union of all points in the image is never acceptable (no outside
// point to judge isolation against); leftover points stay singletons.
// Deterministic: ties break on the merged cluster's sorted point ids.
ImageClusterResult clusterImage(const std::vector<PointAnnotation>& points, double theta);

struct CorpusClusterResult {
  std::vector<PointCluster> clusters;
  std::map<std::string, std::vector<MergeStep>> traceByImage;
};

// Clusters every image independently (parallelizable); cluster ids are
// assigned in (image id, first point id) order regardless of thread count.
CorpusClusterResult clusterCorpus(const std::vector<PointAnnotation>& points, double theta,
                                  int threads = 1);

}  // namespace vocemerge
