#include "test_support.hpp"

#include <atomic>
#include <fstream>
#include <random>

namespace txf::test {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

void write_separable_binary_task(const std::filesystem::path& dir, const std::string& name, int n) {
  write_text(dir / (name + ".manifest"), "task = " + name + R"(
kind = binary
metric = auroc
data = )" + name + R"(.csv
id_column = id
label_column = label
role.drug.type = smiles
role.drug.column = smiles
role.drug.label = Drug SMILES
instructions = Answer the following question about drug properties.
context = Synthetic structures where amines are active.
question = Given a drug SMILES string, predict whether it
option.a = is inactive
option.b = is active
split = random
)");
  std::string csv = "id,smiles,label\n";
  for (int i = 0; i < n; ++i) {
    const std::string chain(static_cast<std::size_t>(1 + (i / 2) % 12), 'C');
    const bool positive = i % 2 == 0;
    csv += "m" + std::to_string(i) + "," + (positive ? "NC" + chain + "N" : "c1ccccc1" + chain) + "," +
           (positive ? "1" : "0") + "\n";
  }
  write_text(dir / (name + ".csv"), csv);
}

void write_ester_generation_task(const std::filesystem::path& dir, const std::string& name, int n) {
  write_text(dir / (name + ".manifest"), "task = " + name + R"(
kind = generation
metric = set_accuracy
data = )" + name + R"(.csv
id_column = id
label_column = reactants
role.product.type = smiles
role.product.column = product
role.product.label = Product SMILES
instructions = Answer the following question about reactions.
context = Esters form from an acid and an alcohol.
question = Given a product SMILES string, predict the reactant SMILES string.
split = random
)");
  std::string csv = "id,product,reactants\n";
  for (int i = 0; i < n; ++i) {
    const std::string chain(static_cast<std::size_t>(1 + i), 'C');
    csv += "r" + std::to_string(i) + "," + chain + "C(=O)OC," + "OC." + chain + "C(=O)O\n";
  }
  write_text(dir / (name + ".csv"), csv);
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("txf_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace txf::test
