#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "txf/chem/molecule.hpp"
#include "txf/common/top_k.hpp"

namespace txf::chem {

/// Fixed-width bit vector with a cached popcount.
class Fingerprint {
 public:
  Fingerprint() = default;
  explicit Fingerprint(std::size_t nbits);
  /// Takes ownership of packed 64-bit words; bits past nbits must be clear.
  Fingerprint(std::size_t nbits, std::vector<std::uint64_t> words);

  std::size_t nbits() const { return nbits_; }
  std::size_t popcount() const { return popcount_; }
  bool test(std::size_t bit) const { return (words_[bit / 64] >> (bit % 64)) & 1U; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::vector<std::size_t> on_bits() const;

  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }

 private:
  friend class FingerprintBuilder;
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
  std::size_t popcount_ = 0;
};

struct MorganOptions {
  int radius = 2;
  std::size_t nbits = 2048;
};

/// Hashed circular (Morgan/ECFP-style) fingerprint.
///
/// Atom invariants are element, formal charge, heavy degree, hydrogen count
/// and the aromatic flag. Each round hashes an atom's invariant together
/// with the sorted (bond order, neighbor invariant) pairs. An environment
/// covering exactly the same bonds as one already emitted is skipped, so a
/// bit stands for a distinct substructure. Stereo and atom maps are ignored.
Fingerprint morgan_fingerprint(const Molecule& mol, const MorganOptions& options = {});

/// Environment hashes before folding, one per emitted environment.
std::vector<std::uint64_t> morgan_environments(const Molecule& mol, int radius);

/// |A and B| / |A or B|; 1.0 when both are empty. Throws
/// std::invalid_argument on width mismatch.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

/// The k most similar pool entries, by descending similarity then ascending
/// index. Throws std::invalid_argument for an empty pool.
std::vector<Neighbor> top_k_tanimoto(const Fingerprint& query, std::span<const Fingerprint> pool, std::size_t k,
                                     unsigned threads = 0);

/// Binary fingerprint file.
///
/// Layout (all integers little-endian):
///   bytes 0-3   magic "TXFP"
///   bytes 4-7   format version (1)
///   bytes 8-11  nbits
///   bytes 12-15 radius
/// followed by ceil(nbits / 64) 64-bit words per fingerprint until end of
/// file, bit i of the fingerprint being bit (i % 64) of word (i / 64).
struct FingerprintFile {
  int radius = 2;
  std::size_t nbits = 2048;
  std::vector<Fingerprint> fingerprints;
};

void write_fingerprints(std::ostream& out, const FingerprintFile& file);
/// Throws std::runtime_error on a bad header or truncated body.
FingerprintFile read_fingerprints(std::istream& in);

}  // namespace txf::chem
