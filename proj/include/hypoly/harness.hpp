#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypoly/polyhedron.hpp"

namespace hypoly {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { Check, Volume, Deform, Stoker, VolConj, Yokota, Catalog };

const char* kind_name(ExperimentKind k);

/// Inputs are polyhedron or graph files, or "catalog:NAME".
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Check;
  std::vector<std::string> inputs;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  int steps = 64;
  int r_min = 51;
  int r_max = 201;
  int r_step = 10;
  int threads = 1;

  long samples = 10'000'000;   // volume
  std::string family = "scale-one-edge";  // deform
  int edge = 0;
  double t_begin = 0.9;
  double t_end = 1.0;
  double perturbation = 0.05;  // stoker: angle offset of the two initial guesses
  std::vector<int> colors;     // yokota
  int r = 7;
  std::string normalization = "bare";  // yokota, volconj: bare | unitary
  bool fixed_colors = false;   // volconj: colors of r_min at every r
};

/// FNV-1a hash of a canonical rendering of every field except out_dir.
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Throws Config when a field is out of range.
void validate_config(const ExperimentConfig& cfg);

struct ExperimentResult {
  int exit_code = 0;  // 0 success, 1 config error, 2 numeric failure
  std::string message;
  std::vector<std::filesystem::path> files;
};

/// Writes <out_dir>/<kind>.csv (HYPOLY_OUT_DIR overrides out_dir) and a
/// summary to `log`.  Never throws.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Resolves "catalog:NAME" or loads a polyhedron file.
Realization load_input(const std::string& ref);

}  // namespace hypoly
