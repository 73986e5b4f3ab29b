#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "platec/cli.hpp"
#include "platec/model_ast.hpp"

namespace platec::testing {

std::filesystem::path corpus_dir();
std::string read_text(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);

/// Parsed `<corpus>/<name>/<name>.bpn`.
PlateModel fixture(const std::string& name);
/// Hints beside the fixture, or none.
EquivalenceHints fixture_hints(const std::string& name);
std::vector<std::string> fixture_names();

/// Random plate models. Output is not guaranteed to validate; callers filter.
class ModelGenerator {
 public:
  explicit ModelGenerator(std::uint32_t seed) : rng_(seed) {}
  PlateModel next();
  /// Draws until validate() reports no errors.
  PlateModel next_valid();

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::mt19937 rng_;
  int counter_ = 0;
};

/// Unique temporary directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace platec::testing
