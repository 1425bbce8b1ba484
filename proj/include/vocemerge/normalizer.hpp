#pragma once

#include <string>
#include <vector>

#include "vocemerge/ontology.hpp"
#include "vocemerge/types.hpp"

namespace vocemerge {

// Damerau-Levenshtein distance (optimal string alignment: adjacent
// transpositions count as one edit). Returns cap+1 as soon as the distance
// provably exceeds cap.
int damerauLevenshtein(const std::string& a, const std::string& b, int cap = 1 << 20);

// Maximum edit distance allowed when correcting a token of the given length.
int correctionBudget(size_t tokenLength);

// Lowercases and whitespace-normalizes the string. Strings that match the
// lexicon (directly or plural-folded) stay as typed. Otherwise the whole
// string is corrected to the nearest lexicon form within the length-dependent
// edit budget; failing that, each token is corrected individually, skipping
// tokens that are lexicon forms or words of multi-word forms. Ties break by
// smaller distance, then higher surface frequency, then lexicographic order.
std::string correctSpelling(const std::string& raw, const Ontology& onto);

// Head noun = longest token suffix found in the lexicon (plural-folded);
// the remaining prefix tokens are modifiers. Falls back to the last token.
std::pair<std::string, std::vector<std::string>> extractHead(const std::string& corrected,
                                                             const Ontology& onto);

// Full-string lexicon match wins over the head noun's match; either path
// applies plural folding, and the result is restricted to physical objects.
std::set<std::string> identifyEntities(const std::string& corrected, const std::string& head,
                                       const Ontology& onto);

CandidateSet normalizePoint(const PointAnnotation& p, const Ontology& onto);

// Normalizes every annotation, preserving input order. Pure per point, so
// the worker count never changes the output.
std::vector<CandidateSet> normalizeCorpus(const std::vector<PointAnnotation>& points,
                                          const Ontology& onto, int threads = 1);

}  // namespace vocemerge
