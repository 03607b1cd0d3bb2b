#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "txf/bioseq/sequence.hpp"
#include "txf/common/random.hpp"

namespace txf::bioseq {
namespace {

BioSequence aa(std::string_view s) { return BioSequence(s, SequenceKind::AminoAcid); }
BioSequence nt(std::string_view s) { return BioSequence(s, SequenceKind::Nucleotide); }

// Exhaustive enumeration of every global alignment; returns the best
// (score, matches, -length) triple.
std::tuple<int, int, int> enumerate(const std::string& s, const std::string& t, std::size_t i, std::size_t j) {
  if (i == s.size() && j == t.size()) return {0, 0, 0};
  std::tuple<int, int, int> best{-1000000, 0, 0};
  auto consider = [&](std::tuple<int, int, int> rest, int score, int match) {
    std::tuple<int, int, int> total{std::get<0>(rest) + score, std::get<1>(rest) + match, std::get<2>(rest) - 1};
    best = std::max(best, total);
  };
  if (i < s.size() && j < t.size()) {
    const bool same = s[i] == t[j];
    consider(enumerate(s, t, i + 1, j + 1), same ? 1 : -1, same ? 1 : 0);
  }
  if (i < s.size()) consider(enumerate(s, t, i + 1, j), -2, 0);
  if (j < t.size()) consider(enumerate(s, t, i, j + 1), -2, 0);
  return best;
}

std::string random_residues(Rng& rng, std::string_view alphabet, std::size_t len) {
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out += alphabet[rng.uniform_index(alphabet.size())];
  return out;
}

TEST(BioSequence, AlphabetAndCase) {
  EXPECT_EQ(aa("mkv").residues(), "MKV");
  EXPECT_NO_THROW(aa("ACDEFGHIKLMNPQRSTVWYBZUOX"));
  EXPECT_NO_THROW(nt("acgtun"));
  EXPECT_THROW(nt("ACGQ"), std::invalid_argument);
  EXPECT_THROW(aa("MK1"), std::invalid_argument);
  EXPECT_THROW(aa(""), std::invalid_argument);
}

TEST(Identity, Examples) {
  EXPECT_DOUBLE_EQ(percent_identity(nt("ACGT"), nt("ACGT")), 100.0);
  EXPECT_DOUBLE_EQ(percent_identity(aa("AAAA"), aa("CCCC")), 0.0);
  EXPECT_DOUBLE_EQ(percent_identity(nt("ACGT"), nt("ACT")), 75.0);
  EXPECT_THROW(percent_identity(nt("ACGT"), aa("ACGT")), std::invalid_argument);
}

TEST(Identity, MatchesExhaustiveAlignment) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_residues(rng, "ACG", 1 + rng.uniform_index(6));
    const auto t = random_residues(rng, "ACG", 1 + rng.uniform_index(6));
    const auto [score, matches, neg_len] = enumerate(s, t, 0, 0);
    (void)score;
    EXPECT_DOUBLE_EQ(percent_identity(nt(s), nt(t)), 100.0 * matches / -neg_len) << s << " vs " << t;
  }
}

TEST(Identity, SymmetricAndHundredOnlyWhenEqual) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_residues(rng, "ACDEFGHIKLMNPQRSTVWY", 5 + rng.uniform_index(40));
    const auto t = random_residues(rng, "ACDEFGHIKLMNPQRSTVWY", 5 + rng.uniform_index(40));
    EXPECT_EQ(percent_identity(aa(s), aa(t)), percent_identity(aa(t), aa(s)));
    EXPECT_EQ(percent_identity(aa(s), aa(t)) == 100.0, s == t);
  }
}

TEST(Identity, NonincreasingUnderCorruption) {
  Rng rng(6);
  const std::string alphabet = "ACDEFGHIKLMNPQRSTVWY";
  for (int trial = 0; trial < 50; ++trial) {
    const auto original = random_residues(rng, alphabet, 30 + rng.uniform_index(30));
    auto copy = original;
    double last = 100.0;
    std::vector<std::size_t> positions(original.size());
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    rng.shuffle(std::span<std::size_t>(positions));
    for (std::size_t step = 0; step < 10; ++step) {
      const auto pos = positions[step];
      char c = copy[pos];
      while (c == original[pos]) c = alphabet[rng.uniform_index(alphabet.size())];
      copy[pos] = c;
      const double now = percent_identity(aa(original), aa(copy));
      EXPECT_LE(now, last) << original << " vs " << copy;
      last = now;
    }
  }
}

TEST(TopKIdentity, QueryFirstAndClamp) {
  Rng rng(7);
  std::vector<BioSequence> pool;
  for (int i = 0; i < 20; ++i) pool.push_back(nt(random_residues(rng, "ACGT", 20)));
  const auto hits = top_k_identity(pool[4], pool, 3);
  EXPECT_EQ(hits[0].index, 4u);
  EXPECT_DOUBLE_EQ(hits[0].similarity, 100.0);
  EXPECT_EQ(top_k_identity(pool[4], pool, 100).size(), pool.size());
  EXPECT_THROW(top_k_identity(pool[0], std::span<const BioSequence>(), 1), std::invalid_argument);
}

TEST(TopKIdentity, MatchesNaiveScan) {
  Rng rng(8);
  std::vector<BioSequence> pool;
  for (int i = 0; i < 500; ++i) pool.push_back(aa(random_residues(rng, "ACDE", 8 + rng.uniform_index(8))));
  const auto& query = pool[17];
  std::vector<Neighbor> naive;
  for (std::size_t i = 0; i < pool.size(); ++i) naive.push_back({i, percent_identity(query, pool[i])});
  std::stable_sort(naive.begin(), naive.end(), [](const Neighbor& a, const Neighbor& b) { return a.similarity > b.similarity; });
  for (unsigned threads : {1u, 6u}) {
    const auto got = top_k_identity(query, pool, 40, {}, threads);
    ASSERT_EQ(got.size(), 40u);
    EXPECT_TRUE(std::equal(got.begin(), got.end(), naive.begin()));
  }
}

}  // namespace
}  // namespace txf::bioseq
