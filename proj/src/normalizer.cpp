#include "vocemerge/normalizer.hpp"

#include <algorithm>

#include "vocemerge/thread_pool.hpp"
#include "vocemerge/util.hpp"

namespace vocemerge {

int damerauLevenshtein(const std::string& a, const std::string& b, int cap) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  if (std::abs(n - m) > cap) return cap + 1;
  std::vector<int> prev2(m + 1), prev(m + 1), cur(m + 1);
  for (int j = 0; j <= m; ++j) prev[j] = j;
  for (int i = 1; i <= n; ++i) {
    cur[0] = i;
    int rowMin = cur[0];
    for (int j = 1; j <= m; ++j) {
      int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      int best = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, prev2[j - 2] + 1);
      }
      cur[j] = best;
      rowMin = std::min(rowMin, best);
    }
    if (rowMin > cap) return cap + 1;
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

int correctionBudget(size_t tokenLength) { return tokenLength <= 5 ? 1 : 2; }

namespace {

bool tokenIsKnown(const std::string& token, const Ontology& onto) {
  if (onto.lexiconLookupFolded(token)) return true;
  return onto.isLexiconToken(token);
}

// Nearest lexicon form within the given budget; ties by higher frequency,
// then lexicographic order. Returns the input when nothing is close enough.
std::string nearestForm(const std::string& s, int cap, const Ontology& onto) {
  int bestDist = cap + 1;
  long long bestFreq = 0;
  const std::string* bestForm = nullptr;
  for (const auto& [form, ids] : onto.lexicon()) {
    int d = damerauLevenshtein(s, form, cap);
    if (d > cap) continue;
    long long f = onto.surfaceFrequency(form);
    if (d < bestDist || (d == bestDist && f > bestFreq)) {
      bestDist = d;
      bestFreq = f;
      bestForm = &form;
    }
  }
  return bestForm ? *bestForm : s;
}

}  // namespace

std::string correctSpelling(const std::string& raw, const Ontology& onto) {
  std::string s = normalizeWhitespace(toLower(raw));
  if (s.empty()) return s;
  // Exact or plural-folded matches stay as typed; folding happens during
  // entity identification.
  if (onto.lexiconLookupFolded(s)) return s;
  // Whole-string correction first: it can repair edits across token
  // boundaries ("sea lionn") that per-token correction cannot see.
  std::string whole = nearestForm(s, correctionBudget(s.size()), onto);
  if (whole != s) return whole;
  auto tokens = splitWhitespace(s);
  for (auto& t : tokens) {
    if (tokenIsKnown(t, onto)) continue;
    t = nearestForm(t, correctionBudget(t.size()), onto);
  }
  return join(tokens, " ");
}

std::pair<std::string, std::vector<std::string>> extractHead(const std::string& corrected,
                                                             const Ontology& onto) {
  auto tokens = splitWhitespace(corrected);
  if (tokens.empty()) return {"", {}};
  for (size_t start = 0; start + 1 <= tokens.size(); ++start) {
    std::string suffix =
        join(std::vector<std::string>(tokens.begin() + start, tokens.end()), " ");
    if (onto.lexiconLookupFolded(suffix)) {
      return {suffix, std::vector<std::string>(tokens.begin(), tokens.begin() + start)};
    }
  }
  return {tokens.back(), std::vector<std::string>(tokens.begin(), tokens.end() - 1)};
}

std::set<std::string> identifyEntities(const std::string& corrected, const std::string& head,
                                       const Ontology& onto) {
  if (const auto* full = onto.lexiconLookupFolded(corrected)) {
    return onto.restrictToPhysical(*full);
  }
  if (const auto* byHead = onto.lexiconLookupFolded(head)) {
    return onto.restrictToPhysical(*byHead);
  }
  return {};
}

CandidateSet normalizePoint(const PointAnnotation& p, const Ontology& onto) {
  CandidateSet out;
  out.pointId = p.pointId;
  out.corrected = correctSpelling(p.raw, onto);
  auto [head, modifiers] = extractHead(out.corrected, onto);
  out.head = head;
  out.modifiers = std::move(modifiers);
  auto entities = identifyEntities(out.corrected, out.head, onto);
  out.candidates.assign(entities.begin(), entities.end());
  return out;
}

std::vector<CandidateSet> normalizeCorpus(const std::vector<PointAnnotation>& points,
                                          const Ontology& onto, int threads) {
  return parallelMapOrdered<CandidateSet>(
      points.size(), threads, [&](size_t i) { return normalizePoint(points[i], onto); });
}

}  // namespace vocemerge
