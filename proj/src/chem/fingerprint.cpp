#include "txf/chem/fingerprint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "txf/common/random.hpp"

namespace txf::chem {

Fingerprint::Fingerprint(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

Fingerprint::Fingerprint(std::size_t nbits, std::vector<std::uint64_t> words)
    : nbits_(nbits), words_(std::move(words)) {
  if (words_.size() != (nbits + 63) / 64) throw std::invalid_argument("word count does not match nbits");
  if (nbits % 64 != 0 && !words_.empty()) {
    const std::uint64_t tail = ~std::uint64_t{0} << (nbits % 64);
    if (words_.back() & tail) throw std::invalid_argument("bits set past nbits");
  }
  for (auto w : words_) popcount_ += static_cast<std::size_t>(std::popcount(w));
}

std::vector<std::size_t> Fingerprint::on_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

namespace {

constexpr std::uint64_t kSeed = 0x7478665F6D6F7267ULL;  // "txf_morg"

using BondSet = std::vector<std::uint64_t>;

}  // namespace

std::vector<std::uint64_t> morgan_environments(const Molecule& mol, int radius) {
  const std::size_t n = mol.atom_count();
  const std::size_t words = (mol.bond_count() + 63) / 64;

  std::vector<std::uint64_t> invariant(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = mol.atom(static_cast<int>(i));
    std::uint64_t h = kSeed;
    h = hash_combine(h, static_cast<std::uint64_t>(a.atomic_number));
    h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(a.charge)));
    h = hash_combine(h, static_cast<std::uint64_t>(mol.degree(static_cast<int>(i))));
    h = hash_combine(h, static_cast<std::uint64_t>(a.hydrogens));
    h = hash_combine(h, a.aromatic ? 1U : 0U);
    invariant[i] = h;
  }

  std::vector<std::uint64_t> out(invariant);
  std::vector<BondSet> neighborhood(n, BondSet(words, 0));
  std::vector<bool> dead(n, false);
  std::set<BondSet> seen;

  for (int layer = 0; layer < radius; ++layer) {
    std::vector<std::uint64_t> next(invariant);
    std::vector<BondSet> grown(neighborhood);
    std::vector<std::tuple<BondSet, std::uint64_t, std::size_t>> round;

    for (std::size_t i = 0; i < n; ++i) {
      if (dead[i]) continue;
      const auto nbrs = mol.neighbors(static_cast<int>(i));
      if (nbrs.empty()) {
        dead[i] = true;
        continue;
      }
      std::vector<std::pair<std::uint64_t, std::uint64_t>> shell;
      shell.reserve(nbrs.size());
      for (const auto& inc : nbrs) {
        const auto b = static_cast<std::size_t>(inc.bond);
        grown[i][b / 64] |= std::uint64_t{1} << (b % 64);
        const auto& other = neighborhood[static_cast<std::size_t>(inc.neighbor)];
        for (std::size_t w = 0; w < words; ++w) grown[i][w] |= other[w];
        shell.emplace_back(static_cast<std::uint64_t>(mol.bond(inc.bond).order),
                           invariant[static_cast<std::size_t>(inc.neighbor)]);
      }
      std::sort(shell.begin(), shell.end());
      std::uint64_t h = hash_combine(kSeed, static_cast<std::uint64_t>(layer + 1));
      h = hash_combine(h, invariant[i]);
      for (const auto& [order, inv] : shell) {
        h = hash_combine(h, order);
        h = hash_combine(h, inv);
      }
      next[i] = h;
      round.emplace_back(grown[i], h, i);
    }

    std::sort(round.begin(), round.end());
    for (const auto& [bonds, h, atom] : round) {
      if (seen.insert(bonds).second) {
        out.push_back(h);
      } else {
        dead[atom] = true;
      }
    }
    invariant = std::move(next);
    neighborhood = std::move(grown);
  }
  return out;
}

Fingerprint morgan_fingerprint(const Molecule& mol, const MorganOptions& options) {
  if (options.nbits == 0) throw std::invalid_argument("nbits must be positive");
  if (options.radius < 0) throw std::invalid_argument("radius must be nonnegative");
  std::vector<std::uint64_t> words((options.nbits + 63) / 64, 0);
  for (std::uint64_t h : morgan_environments(mol, options.radius)) {
    const std::size_t bit = h % options.nbits;
    words[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  return Fingerprint(options.nbits, std::move(words));
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.nbits() != b.nbits()) throw std::invalid_argument("fingerprint widths differ");
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t common = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) common += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
  const std::size_t either = a.popcount() + b.popcount() - common;
  if (either == 0) return 1.0;
  return static_cast<double>(common) / static_cast<double>(either);
}

std::vector<Neighbor> top_k_tanimoto(const Fingerprint& query, std::span<const Fingerprint> pool, std::size_t k,
                                     unsigned threads) {
  if (pool.empty()) throw std::invalid_argument("empty fingerprint pool");
  for (const auto& fp : pool) {
    if (fp.nbits() != query.nbits()) throw std::invalid_argument("fingerprint widths differ");
  }
  return top_k_scan(pool.size(), k, [&](std::size_t i) { return tanimoto(query, pool[i]); }, threads);
}

namespace {

void put_le(std::ostream& out, std::uint64_t value, int bytes) {
  std::array<char, 8> buf{};
  for (int i = 0; i < bytes; ++i) buf[static_cast<std::size_t>(i)] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(buf.data(), bytes);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), bytes);
  if (in.gcount() != bytes) throw std::runtime_error("truncated fingerprint file");
  std::uint64_t value = 0;
  for (int i = 0; i < bytes; ++i) value |= static_cast<std::uint64_t>(buf[static_cast<std::size_t>(i)]) << (8 * i);
  return value;
}

constexpr char kMagic[4] = {'T', 'X', 'F', 'P'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void write_fingerprints(std::ostream& out, const FingerprintFile& file) {
  out.write(kMagic, 4);
  put_le(out, kVersion, 4);
  put_le(out, file.nbits, 4);
  put_le(out, static_cast<std::uint64_t>(file.radius), 4);
  for (const auto& fp : file.fingerprints) {
    if (fp.nbits() != file.nbits) throw std::invalid_argument("fingerprint width differs from file header");
    for (auto w : fp.words()) put_le(out, w, 8);
  }
}

FingerprintFile read_fingerprints(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || !std::equal(magic, magic + 4, kMagic)) throw std::runtime_error("not a fingerprint file");
  const auto version = get_le(in, 4);
  if (version != kVersion) throw std::runtime_error("unsupported fingerprint file version " + std::to_string(version));
  FingerprintFile file;
  file.nbits = static_cast<std::size_t>(get_le(in, 4));
  file.radius = static_cast<int>(get_le(in, 4));
  if (file.nbits == 0) throw std::runtime_error("fingerprint width is zero");
  const std::size_t words = (file.nbits + 63) / 64;
  while (in.peek() != std::char_traits<char>::eof()) {
    std::vector<std::uint64_t> w(words);
    for (auto& x : w) x = get_le(in, 8);
    file.fingerprints.emplace_back(file.nbits, std::move(w));
  }
  return file;
}

}  // namespace txf::chem
