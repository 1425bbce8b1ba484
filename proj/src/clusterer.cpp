#include "vocemerge/clusterer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "vocemerge/error.hpp"
#include "vocemerge/thread_pool.hpp"

namespace vocemerge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ImageWork {
  std::vector<const PointAnnotation*> pts;  // sorted by point id
  std::vector<std::vector<double>> dist;

  double subsetScore(const std::vector<int>& members) const {
    const size_t n = pts.size();
    std::vector<char> inside(n, 0);
    for (int i : members) inside[i] = 1;
    double dIntra = 0.0;
    for (size_t a = 0; a < members.size(); ++a) {
      for (size_t b = a + 1; b < members.size(); ++b) {
        dIntra = std::max(dIntra, dist[members[a]][members[b]]);
      }
    }
    double dInter = kInf;
    for (int i : members) {
      for (size_t j = 0; j < n; ++j) {
        if (!inside[j]) dInter = std::min(dInter, dist[i][j]);
      }
    }
    if (std::isinf(dInter)) return kInf;  // no outside points
    if (dInter == 0.0) return 0.0;
    if (dIntra == 0.0) return kInf;
    return dInter / dIntra;
  }
};

std::vector<std::string> memberIds(const ImageWork& work, const std::vector<int>& members) {
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (int i : members) ids.push_back(work.pts[i]->pointId);
  return ids;  // members kept sorted, and pts is sorted by id
}

}  // namespace

double euclid(double x1, double y1, double x2, double y2) {
  double dx = x1 - x2, dy = y1 - y2;
  return std::sqrt(dx * dx + dy * dy);
}

double clusterScore(const std::vector<const PointAnnotation*>& cluster,
                    const std::vector<const PointAnnotation*>& others) {
  if (cluster.empty()) throw VocabError(ErrorCode::Validation, "empty cluster");
  double dIntra = 0.0;
  for (size_t a = 0; a < cluster.size(); ++a) {
    for (size_t b = a + 1; b < cluster.size(); ++b) {
      dIntra = std::max(dIntra, euclid(cluster[a]->x, cluster[a]->y, cluster[b]->x, cluster[b]->y));
    }
  }
  double dInter = kInf;
  for (const auto* p : cluster) {
    for (const auto* q : others) {
      dInter = std::min(dInter, euclid(p->x, p->y, q->x, q->y));
    }
  }
  if (std::isinf(dInter)) return kInf;
  if (dInter == 0.0) return 0.0;
  if (dIntra == 0.0) return kInf;
  return dInter / dIntra;
}

ImageClusterResult clusterImage(const std::vector<PointAnnotation>& points, double theta) {
  ImageClusterResult result;
  if (points.empty()) return result;
  for (const auto& p : points) {
    if (p.imageId != points.front().imageId) {
      throw VocabError(ErrorCode::Validation, "clusterImage fed points from several images");
    }
  }

  ImageWork work;
  for (const auto& p : points) work.pts.push_back(&p);
  std::sort(work.pts.begin(), work.pts.end(),
            [](const PointAnnotation* a, const PointAnnotation* b) {
              return a->pointId < b->pointId;
            });
  const size_t n = work.pts.size();
  work.dist.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double d = euclid(work.pts[i]->x, work.pts[i]->y, work.pts[j]->x, work.pts[j]->y);
      work.dist[i][j] = work.dist[j][i] = d;
    }
  }

  // Agglomerate to completion, recording every merged union with its score.
  std::vector<std::vector<int>> active;
  for (size_t i = 0; i < n; ++i) active.push_back({static_cast<int>(i)});
  struct Node {
    std::vector<int> members;
    double score;
  };
  std::vector<Node> nodes;

  auto annotatorsDisjoint = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::set<std::string> seen;
    for (int i : a) seen.insert(work.pts[i]->annotatorId);
    for (int i : b) {
      if (!seen.insert(work.pts[i]->annotatorId).second) return false;
    }
    return true;
  };

  while (active.size() > 1) {
    double bestScore = -1.0;
    int bestA = -1, bestB = -1;
    std::vector<int> bestUnion;
    for (size_t a = 0; a < active.size(); ++a) {
      for (size_t b = a + 1; b < active.size(); ++b) {
        if (!annotatorsDisjoint(active[a], active[b])) continue;
        std::vector<int> merged;
        merged.reserve(active[a].size() + active[b].size());
        std::merge(active[a].begin(), active[a].end(), active[b].begin(), active[b].end(),
                   std::back_inserter(merged));
        double score = work.subsetScore(merged);
        bool better;
        if (bestA < 0) {
          better = true;
        } else if (score != bestScore) {
          better = score > bestScore;
        } else {
          better = merged < bestUnion;  // sorted indices follow sorted point ids
        }
        if (better) {
          bestScore = score;
          bestA = static_cast<int>(a);
          bestB = static_cast<int>(b);
          bestUnion = std::move(merged);
        }
      }
    }
    if (bestA < 0) break;  // every remaining merge violates the annotator rule
    active[bestA] = bestUnion;
    active.erase(active.begin() + bestB);
    nodes.push_back({bestUnion, bestScore});
    result.trace.push_back({memberIds(work, bestUnion), bestScore});
  }

  // Accept maximal recorded unions with score >= theta. The union of all
  // points is excluded: with nothing outside, the ratio carries no evidence.
  std::vector<const Node*> qualifying;
  for (const auto& node : nodes) {
    if (node.members.size() == n) continue;
    if (node.score >= theta) qualifying.push_back(&node);
  }
  std::sort(qualifying.begin(), qualifying.end(), [](const Node* a, const Node* b) {
    if (a->members.size() != b->members.size()) return a->members.size() > b->members.size();
    return a->members < b->members;
  });
  std::vector<char> taken(n, 0);
  std::vector<std::vector<int>> accepted;
  for (const auto* node : qualifying) {
    bool free = std::none_of(node->members.begin(), node->members.end(),
                             [&](int i) { return taken[i]; });
    if (!free) continue;
    for (int i : node->members) taken[i] = 1;
    accepted.push_back(node->members);
  }
  for (size_t i = 0; i < n; ++i) {
    if (!taken[i]) accepted.push_back({static_cast<int>(i)});
  }
  std::sort(accepted.begin(), accepted.end());

  for (const auto& members : accepted) {
    PointCluster c;
    c.imageId = work.pts[members.front()]->imageId;
    c.pointIds = memberIds(work, members);
    std::vector<const PointAnnotation*> inside, outside;
    std::vector<char> inSet(n, 0);
    for (int i : members) inSet[i] = 1;
    for (size_t i = 0; i < n; ++i) (inSet[i] ? inside : outside).push_back(work.pts[i]);
    c.score = clusterScore(inside, outside);
    result.clusters.push_back(std::move(c));
  }
  return result;
}

CorpusClusterResult clusterCorpus(const std::vector<PointAnnotation>& points, double theta,
                                  int threads) {
  std::map<std::string, std::vector<PointAnnotation>> byImage;
  for (const auto& p : points) byImage[p.imageId].push_back(p);
  std::vector<const std::vector<PointAnnotation>*> images;
  images.reserve(byImage.size());
  for (const auto& [id, pts] : byImage) images.push_back(&pts);

  auto perImage = parallelMapOrdered<ImageClusterResult>(
      images.size(), threads, [&](size_t i) { return clusterImage(*images[i], theta); });

  CorpusClusterResult out;
  size_t counter = 0;
  size_t imageIdx = 0;
  for (const auto& [imageId, pts] : byImage) {
    auto& r = perImage[imageIdx++];
    for (auto& c : r.clusters) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "c%06zu", ++counter);
      c.clusterId = buf;
      out.clusters.push_back(std::move(c));
    }
    if (!r.trace.empty()) out.traceByImage[imageId] = std::move(r.trace);
  }
  return out;
}

}  // namespace vocemerge
