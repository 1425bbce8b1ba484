#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vocemerge/ontology.hpp"
#include "vocemerge/types.hpp"

namespace vocemerge {

// The entities actually assigned to points, with their point masses.
struct NaturalVocabulary {
  std::map<std::string, long long> pointMass;  // entity -> |P(e)|, all >= 1
  long long totalPoints = 0;                   // |U|

  std::set<std::string> entities() const;
};

// The ontology contracted to the natural vocabulary: each entity's parent is
// its nearest annotated ancestor, or the virtual root (empty id) if none.
struct NaturalHierarchy {
  std::map<std::string, std::string> parent;                 // "" = virtual root
  std::map<std::string, std::vector<std::string>> children;  // sorted; key "" = roots

  bool contains(const std::string& e) const { return parent.count(e) > 0; }
  // a <= b in the contracted hierarchy (an entity covers itself).
  bool isAncestorOrSelf(const std::string& a, const std::string& b) const;
};

NaturalVocabulary buildNaturalVocabulary(const std::vector<ResolvedPoint>& resolved);
NaturalHierarchy buildNaturalHierarchy(const NaturalVocabulary& nv, const Ontology& onto);

// Entities of the vocabulary covered by V: descendants-or-self of a member.
std::set<std::string> coveredSet(const std::set<std::string>& v, const NaturalVocabulary& nv,
                                 const NaturalHierarchy& nh);

// Fraction of points whose entity is covered by V. Errors on an empty corpus.
double coverage(const std::set<std::string>& v, const NaturalVocabulary& nv,
                const NaturalHierarchy& nh);

// Fraction of covered points whose entity is exactly in V. The empty-cover
// case defaults to 1.0 (configurable).
double specificity(const std::set<std::string>& v, const NaturalVocabulary& nv,
                   const NaturalHierarchy& nh, double zeroOverZero = 1.0);

struct ReducedVocabulary {
  std::vector<std::string> entities;  // sorted, size n
  int n = 0;
  double alpha = 0.0;
  double coverage = 0.0;
  double specificity = 0.0;
  double objective = 0.0;

  // Present when some k < n strictly beats the exactly-n optimum.
  struct Smaller {
    std::vector<std::string> entities;
    int n = 0;
    double coverage = 0.0;
    double specificity = 0.0;
    double objective = 0.0;
  };
  std::optional<Smaller> betterSmaller;
};

// Exact size-n maximizer of alpha*coverage + (1-alpha)*specificity, found by
// dynamic programming over the contracted tree with the covered point mass as
// a state dimension (the specificity ratio is not separable otherwise). All
// mass arithmetic is exact integers; ties break by higher selected mass, then
// lower covered mass, then a deterministic reconstruction preferring smaller
// entity ids.
ReducedVocabulary reduceVocabulary(const NaturalVocabulary& nv, const NaturalHierarchy& nh,
                                   int n, double alpha, double specZeroOverZero = 1.0);

std::vector<ReducedVocabulary> sweepAlpha(const NaturalVocabulary& nv,
                                          const NaturalHierarchy& nh, int n,
                                          const std::vector<double>& grid, int threads = 1);

void writeReducedVocabulary(const std::string& path, const ReducedVocabulary& rv);
// CSV: alpha,coverage,specificity,objective.
void writeSweepCurve(const std::string& path, const std::vector<ReducedVocabulary>& rows);

}  // namespace vocemerge
