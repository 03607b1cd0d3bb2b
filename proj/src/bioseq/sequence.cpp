#include "txf/bioseq/sequence.hpp"

#include <cctype>
#include <stdexcept>
#include <tuple>

namespace txf::bioseq {
namespace {

constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWYBZUOX";
constexpr std::string_view kNucleotides = "ACGTUN";

struct Cell {
  int score = 0;
  int matches = 0;
  int length = 0;
};

bool better(const Cell& x, const Cell& y) {
  return std::tuple(x.score, x.matches, -x.length) > std::tuple(y.score, y.matches, -y.length);
}

}  // namespace

BioSequence::BioSequence(std::string_view residues, SequenceKind kind) : kind_(kind) {
  if (residues.empty()) throw std::invalid_argument("empty sequence");
  const auto alphabet = kind == SequenceKind::AminoAcid ? kAminoAcids : kNucleotides;
  residues_.reserve(residues.size());
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(residues[i])));
    if (alphabet.find(c) == std::string_view::npos) {
      throw std::invalid_argument(std::string("invalid ") + (kind == SequenceKind::AminoAcid ? "amino acid" : "nucleotide") +
                                  " '" + residues[i] + "' at position " + std::to_string(i));
    }
    residues_ += c;
  }
}

BioSequence BioSequence::lenient(std::string_view residues, SequenceKind kind) {
  const auto alphabet = kind == SequenceKind::AminoAcid ? kAminoAcids : kNucleotides;
  const char wildcard = kind == SequenceKind::AminoAcid ? 'X' : 'N';
  std::string clean;
  for (char raw : residues) {
    if (std::isspace(static_cast<unsigned char>(raw))) continue;
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
    clean += alphabet.find(c) == std::string_view::npos ? wildcard : c;
  }
  return BioSequence(clean, kind);
}

double percent_identity(const BioSequence& a, const BioSequence& b, const AlignmentScores& scores) {
  if (a.kind() != b.kind()) throw std::invalid_argument("sequence kinds differ");
  const std::string& s = a.residues();
  const std::string& t = b.residues();
  const std::size_t m = t.size();

  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = {static_cast<int>(j) * scores.gap, 0, static_cast<int>(j)};
  for (std::size_t i = 1; i <= s.size(); ++i) {
    cur[0] = {static_cast<int>(i) * scores.gap, 0, static_cast<int>(i)};
    for (std::size_t j = 1; j <= m; ++j) {
      const bool same = s[i - 1] == t[j - 1];
      Cell diag{prev[j - 1].score + (same ? scores.match : scores.mismatch), prev[j - 1].matches + (same ? 1 : 0),
                prev[j - 1].length + 1};
      Cell up{prev[j].score + scores.gap, prev[j].matches, prev[j].length + 1};
      Cell left{cur[j - 1].score + scores.gap, cur[j - 1].matches, cur[j - 1].length + 1};
      Cell best = diag;
      if (better(up, best)) best = up;
      if (better(left, best)) best = left;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const Cell& end = prev[m];
  return 100.0 * end.matches / end.length;
}

std::vector<Neighbor> top_k_identity(const BioSequence& query, std::span<const BioSequence> pool, std::size_t k,
                                     const AlignmentScores& scores, unsigned threads) {
  if (pool.empty()) throw std::invalid_argument("empty sequence pool");
  for (const auto& seq : pool) {
    if (seq.kind() != query.kind()) throw std::invalid_argument("sequence kinds differ");
  }
  return top_k_scan(pool.size(), k, [&](std::size_t i) { return percent_identity(query, pool[i], scores); }, threads);
}

}  // namespace txf::bioseq
