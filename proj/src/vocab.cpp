#include "vocemerge/vocab.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "vocemerge/error.hpp"
#include "vocemerge/io.hpp"
#include "vocemerge/thread_pool.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

namespace {
using json = nlohmann::ordered_json;
}

std::set<std::string> NaturalVocabulary::entities() const {
  std::set<std::string> out;
  for (const auto& [e, m] : pointMass) out.insert(e);
  return out;
}

bool NaturalHierarchy::isAncestorOrSelf(const std::string& a, const std::string& b) const {
  if (!contains(a) || !contains(b)) return false;
  std::string cur = a;
  for (;;) {
    if (cur == b) return true;
    auto it = parent.find(cur);
    if (it == parent.end() || it->second.empty()) return false;
    cur = it->second;
  }
}

NaturalVocabulary buildNaturalVocabulary(const std::vector<ResolvedPoint>& resolved) {
  NaturalVocabulary nv;
  for (const auto& p : resolved) {
    nv.pointMass[p.entity] += 1;
    nv.totalPoints += 1;
  }
  return nv;
}

NaturalHierarchy buildNaturalHierarchy(const NaturalVocabulary& nv, const Ontology& onto) {
  NaturalHierarchy nh;
  auto members = nv.entities();
  for (const auto& e : members) {
    auto anc = onto.nearestAnnotatedAncestor(e, members);
    nh.parent[e] = anc.value_or("");
  }
  for (const auto& [e, p] : nh.parent) nh.children[p].push_back(e);
  for (auto& [p, kids] : nh.children) std::sort(kids.begin(), kids.end());
  return nh;
}

std::set<std::string> coveredSet(const std::set<std::string>& v, const NaturalVocabulary& nv,
                                 const NaturalHierarchy& nh) {
  for (const auto& e : v) {
    if (!nh.contains(e)) {
      throw VocabError(ErrorCode::Validation, "entity not in natural vocabulary: " + e);
    }
  }
  std::set<std::string> out;
  for (const auto& [e, m] : nv.pointMass) {
    std::string cur = e;
    for (;;) {
      if (v.count(cur)) {
        out.insert(e);
        break;
      }
      auto it = nh.parent.find(cur);
      if (it == nh.parent.end() || it->second.empty()) break;
      cur = it->second;
    }
  }
  return out;
}

double coverage(const std::set<std::string>& v, const NaturalVocabulary& nv,
                const NaturalHierarchy& nh) {
  if (nv.totalPoints == 0) throw VocabError(ErrorCode::EmptyCorpus, "coverage of empty corpus");
  long long covered = 0;
  for (const auto& e : coveredSet(v, nv, nh)) covered += nv.pointMass.at(e);
  return static_cast<double>(covered) / static_cast<double>(nv.totalPoints);
}

double specificity(const std::set<std::string>& v, const NaturalVocabulary& nv,
                   const NaturalHierarchy& nh, double zeroOverZero) {
  long long covered = 0;
  for (const auto& e : coveredSet(v, nv, nh)) covered += nv.pointMass.at(e);
  if (covered == 0) return zeroOverZero;
  long long selected = 0;
  for (const auto& e : v) selected += nv.pointMass.at(e);
  return static_cast<double>(selected) / static_cast<double>(covered);
}

namespace {

// Tree DP state. Nodes are the vocabulary entities indexed in sorted-id
// order; node -1 is the virtual unselectable root. For each node u and each
// (k = entities selected inside subtree(u), A = covered point mass inside
// subtree(u), with no ancestor of u selected) the table holds the maximum
// selectable point mass B, or -1 when infeasible. Selecting u covers its
// whole subtree, so the best k-1 co-selections under it are simply its k-1
// heaviest descendants; not selecting u leaves u's own mass uncovered and
// combines the children with a knapsack over (k, A).
struct VocabDp {
  // One (k x A) -> B table.
  using Table = std::vector<std::vector<long long>>;

  const NaturalVocabulary& nv;
  int n;
  std::vector<std::string> ids;          // index -> entity id
  std::map<std::string, int> indexOf;
  std::vector<long long> mass;
  std::vector<std::vector<int>> children;  // contraction children by index
  std::vector<int> rootChildren;           // children of the virtual root
  std::vector<long long> subtreeMass;
  std::vector<int> subtreeCount;
  std::vector<std::vector<int>> descByMass;    // descendants sorted mass desc, id asc
  std::vector<std::vector<long long>> descPrefix;  // prefix sums over descByMass
  std::vector<Table> dp;                     // final table per node
  std::vector<std::vector<Table>> prefixes;  // knapsack prefixes per node

  VocabDp(const NaturalVocabulary& nvIn, const NaturalHierarchy& nh, int nIn)
      : nv(nvIn), n(nIn) {
    for (const auto& [e, m] : nv.pointMass) {
      indexOf[e] = static_cast<int>(ids.size());
      ids.push_back(e);
      mass.push_back(m);
    }
    const int count = static_cast<int>(ids.size());
    children.assign(count, {});
    for (const auto& [e, p] : nh.parent) {
      int u = indexOf.at(e);
      if (p.empty()) rootChildren.push_back(u);
      else children[indexOf.at(p)].push_back(u);
    }
    for (auto& c : children) std::sort(c.begin(), c.end());
    std::sort(rootChildren.begin(), rootChildren.end());

    subtreeMass.assign(count, 0);
    subtreeCount.assign(count, 0);
    descByMass.assign(count, {});
    descPrefix.assign(count, {});
    dp.assign(count, {});
    prefixes.assign(count, {});
    for (int r : rootChildren) computeNode(r);
  }

  static Table makeTable(int kMax, long long aMax) {
    return Table(kMax + 1, std::vector<long long>(aMax + 1, -1));
  }

  // Combines `table` (a prefix over earlier children) with a child's table.
  static Table combine(const Table& prefix, long long prefixMass, const Table& child,
                       long long childMass, int kCap) {
    int kPrefix = static_cast<int>(prefix.size()) - 1;
    int kChild = static_cast<int>(child.size()) - 1;
    int kOut = std::min(kCap, kPrefix + kChild);
    Table out = makeTable(kOut, prefixMass + childMass);
    for (int k1 = 0; k1 <= kPrefix; ++k1) {
      for (long long a1 = 0; a1 <= prefixMass; ++a1) {
        long long b1 = prefix[k1][a1];
        if (b1 < 0) continue;
        for (int k2 = 0; k2 <= kChild && k1 + k2 <= kOut; ++k2) {
          for (long long a2 = 0; a2 <= childMass; ++a2) {
            long long b2 = child[k2][a2];
            if (b2 < 0) continue;
            long long& cell = out[k1 + k2][a1 + a2];
            cell = std::max(cell, b1 + b2);
          }
        }
      }
    }
    return out;
  }

  void computeNode(int u) {
    long long sMass = mass[u];
    int sCount = 1;
    std::vector<int> desc;
    for (int c : children[u]) {
      computeNode(c);
      sMass += subtreeMass[c];
      sCount += subtreeCount[c];
      desc.push_back(c);
      desc.insert(desc.end(), descByMass[c].begin(), descByMass[c].end());
    }
    subtreeMass[u] = sMass;
    subtreeCount[u] = sCount;
    std::sort(desc.begin(), desc.end(), [&](int a, int b) {
      if (mass[a] != mass[b]) return mass[a] > mass[b];
      return ids[a] < ids[b];
    });
    descByMass[u] = desc;
    descPrefix[u].assign(desc.size() + 1, 0);
    for (size_t i = 0; i < desc.size(); ++i) {
      descPrefix[u][i + 1] = descPrefix[u][i] + mass[desc[i]];
    }

    int kCap = std::min(n, sCount);
    // Knapsack over children for the not-selected case.
    std::vector<Table> pref;
    Table acc = makeTable(0, 0);
    acc[0][0] = 0;
    pref.push_back(acc);
    long long accMass = 0;
    for (int c : children[u]) {
      acc = combine(acc, accMass, dp[c], subtreeMass[c], kCap);
      accMass += subtreeMass[c];
      pref.push_back(acc);
    }
    prefixes[u] = std::move(pref);

    Table table = makeTable(kCap, sMass);
    const Table& noSel = prefixes[u].back();
    int kNoSel = static_cast<int>(noSel.size()) - 1;
    for (int k = 0; k <= std::min(kCap, kNoSel); ++k) {
      for (long long a = 0; a <= accMass; ++a) {
        if (noSel[k][a] >= 0) table[k][a] = noSel[k][a];
      }
    }
    // Selecting u: the subtree is fully covered; the other k-1 picks are the
    // heaviest descendants.
    for (int k = 1; k <= kCap; ++k) {
      if (k - 1 > static_cast<int>(descByMass[u].size())) break;
      long long b = mass[u] + descPrefix[u][k - 1];
      long long& cell = table[k][sMass];
      cell = std::max(cell, b);
    }
    dp[u] = std::move(table);
  }

  long long selectCaseValue(int u, int k) const {
    if (k < 1 || k - 1 > static_cast<int>(descByMass[u].size())) return -1;
    return mass[u] + descPrefix[u][k - 1];
  }

  // Root-level table over all contraction roots.
  Table rootTable(std::vector<Table>* rootPrefixes) const {
    Table acc = makeTable(0, 0);
    acc[0][0] = 0;
    std::vector<Table> pref{acc};
    long long accMass = 0;
    for (int c : rootChildren) {
      acc = combine(acc, accMass, dp[c], subtreeMass[c], n);
      accMass += subtreeMass[c];
      pref.push_back(acc);
    }
    if (rootPrefixes) *rootPrefixes = std::move(pref);
    return acc;
  }

  // Walks the stored tables back to the selected entity set.
  void reconstructNode(int u, int k, long long a, std::vector<int>* out) const {
    if (k == 0) return;
    long long target = dp[u][k][a];
    if (a == subtreeMass[u] && selectCaseValue(u, k) == target) {
      out->push_back(u);
      for (int i = 0; i < k - 1; ++i) out->push_back(descByMass[u][i]);
      return;
    }
    reconstructChildren(prefixes[u], children[u], k, a, target, out);
  }

  void reconstructChildren(const std::vector<Table>& pref, const std::vector<int>& kids,
                           int k, long long a, long long target,
                           std::vector<int>* out) const {
    for (int c = static_cast<int>(kids.size()) - 1; c >= 0; --c) {
      const Table& before = pref[c];
      const Table& childT = dp[kids[c]];
      int kBefore = static_cast<int>(before.size()) - 1;
      long long aBefore = static_cast<long long>(before[0].size()) - 1;
      bool found = false;
      for (int kc = 0; kc <= std::min<int>(k, static_cast<int>(childT.size()) - 1) && !found;
           ++kc) {
        long long aChildMax = static_cast<long long>(childT[0].size()) - 1;
        for (long long ac = 0; ac <= std::min(a, aChildMax) && !found; ++ac) {
          if (childT[kc][ac] < 0) continue;
          if (k - kc > kBefore || a - ac > aBefore) continue;
          long long bBefore = before[k - kc][a - ac];
          if (bBefore < 0 || bBefore + childT[kc][ac] != target) continue;
          if (kc > 0) reconstructNode(kids[c], kc, ac, out);
          k -= kc;
          a -= ac;
          target = bBefore;
          found = true;
        }
      }
      if (!found) {
        throw VocabError(ErrorCode::Inconsistency, "vocabulary DP backtrack failed");
      }
    }
  }
};

struct RootChoice {
  bool valid = false;
  long long a = 0;
  long long b = 0;
  double objective = -1.0;
};

double evalObjective(double alpha, long long a, long long b, long long total,
                     double zeroOverZero) {
  double cov = static_cast<double>(a) / static_cast<double>(total);
  double spec = a == 0 ? zeroOverZero
                       : static_cast<double>(b) / static_cast<double>(a);
  return alpha * cov + (1.0 - alpha) * spec;
}

// Tie chain: objective, then higher selected mass, then lower covered mass.
bool betterChoice(const RootChoice& cand, const RootChoice& cur) {
  if (!cur.valid) return true;
  if (cand.objective != cur.objective) return cand.objective > cur.objective;
  if (cand.b != cur.b) return cand.b > cur.b;
  return cand.a < cur.a;
}

}  // namespace

ReducedVocabulary reduceVocabulary(const NaturalVocabulary& nv, const NaturalHierarchy& nh,
                                   int n, double alpha, double specZeroOverZero) {
  const int count = static_cast<int>(nv.pointMass.size());
  if (n < 1 || n > count) {
    throw VocabError(ErrorCode::Validation,
                     "vocabulary size " + std::to_string(n) + " out of range [1, " +
                         std::to_string(count) + "]");
  }
  if (nv.totalPoints == 0) throw VocabError(ErrorCode::EmptyCorpus, "empty natural vocabulary");

  VocabDp dp(nv, nh, n);
  std::vector<VocabDp::Table> rootPrefixes;
  VocabDp::Table root = dp.rootTable(&rootPrefixes);

  std::vector<RootChoice> bestPerK(n + 1);
  int kMax = static_cast<int>(root.size()) - 1;
  long long aMax = static_cast<long long>(root[0].size()) - 1;
  for (int k = 1; k <= std::min(n, kMax); ++k) {
    for (long long a = 0; a <= aMax; ++a) {
      if (root[k][a] < 0) continue;
      RootChoice cand{true, a, root[k][a],
                      evalObjective(alpha, a, root[k][a], nv.totalPoints, specZeroOverZero)};
      if (betterChoice(cand, bestPerK[k])) bestPerK[k] = cand;
    }
  }
  if (!bestPerK[n].valid) {
    throw VocabError(ErrorCode::Inconsistency, "no feasible vocabulary of requested size");
  }

  auto materialize = [&](int k, const RootChoice& choice) {
    std::vector<int> picked;
    dp.reconstructChildren(rootPrefixes, dp.rootChildren, k, choice.a, choice.b, &picked);
    std::set<std::string> entitySet;
    for (int i : picked) entitySet.insert(dp.ids[i]);
    return entitySet;
  };

  ReducedVocabulary out;
  out.n = n;
  out.alpha = alpha;
  auto chosen = materialize(n, bestPerK[n]);
  out.entities.assign(chosen.begin(), chosen.end());
  out.coverage = coverage(chosen, nv, nh);
  out.specificity = specificity(chosen, nv, nh, specZeroOverZero);
  out.objective = alpha * out.coverage + (1.0 - alpha) * out.specificity;

  int bestSmallK = -1;
  for (int k = 1; k < n; ++k) {
    if (!bestPerK[k].valid) continue;
    if (bestPerK[k].objective > bestPerK[n].objective &&
        (bestSmallK < 0 || bestPerK[k].objective > bestPerK[bestSmallK].objective)) {
      bestSmallK = k;
    }
  }
  if (bestSmallK > 0) {
    auto smaller = materialize(bestSmallK, bestPerK[bestSmallK]);
    ReducedVocabulary::Smaller s;
    s.entities.assign(smaller.begin(), smaller.end());
    s.n = bestSmallK;
    s.coverage = coverage(smaller, nv, nh);
    s.specificity = specificity(smaller, nv, nh, specZeroOverZero);
    s.objective = alpha * s.coverage + (1.0 - alpha) * s.specificity;
    out.betterSmaller = std::move(s);
  }
  return out;
}

std::vector<ReducedVocabulary> sweepAlpha(const NaturalVocabulary& nv,
                                          const NaturalHierarchy& nh, int n,
                                          const std::vector<double>& grid, int threads) {
  if (grid.empty()) throw VocabError(ErrorCode::Validation, "empty alpha grid");
  return parallelMapOrdered<ReducedVocabulary>(
      grid.size(), threads, [&](size_t i) { return reduceVocabulary(nv, nh, n, grid[i]); });
}

void writeReducedVocabulary(const std::string& path, const ReducedVocabulary& rv) {
  json doc;
  doc["n"] = rv.n;
  doc["alpha"] = rv.alpha;
  doc["entities"] = rv.entities;
  doc["coverage"] = rv.coverage;
  doc["specificity"] = rv.specificity;
  doc["objective"] = rv.objective;
  if (rv.betterSmaller) {
    json s;
    s["n"] = rv.betterSmaller->n;
    s["entities"] = rv.betterSmaller->entities;
    s["coverage"] = rv.betterSmaller->coverage;
    s["specificity"] = rv.betterSmaller->specificity;
    s["objective"] = rv.betterSmaller->objective;
    doc["better_at_smaller_n"] = s;
  }
  writeTextFile(path, doc.dump(2) + "\n");
}

void writeSweepCurve(const std::string& path, const std::vector<ReducedVocabulary>& rows) {
  std::string buf = "alpha,coverage,specificity,objective\n";
  for (const auto& r : rows) {
    buf += formatDouble(r.alpha) + "," + formatDouble(r.coverage) + "," +
           formatDouble(r.specificity) + "," + formatDouble(r.objective) + "\n";
  }
  writeTextFile(path, buf);
}

}  // namespace vocemerge
