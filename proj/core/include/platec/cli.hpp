#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "platec/atomicizer.hpp"
#include "platec/emitters.hpp"
#include "platec/er_model.hpp"
#include "platec/reducer.hpp"

namespace platec {

/// Pipeline checkpoints, in order.
enum class Stage { apm, structural_erm, raw_erm, reduced };

std::string_view to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view s);

/// Every intermediate of one full run over a validated model.
struct Compilation {
  AtomicPlateModel apm;
  ERModel structural;
  ERModel raw;
  ReduceResult reduced;
};

/// Requires validate(model).ok().
Compilation compile(const PlateModel& model, const EquivalenceHints& hints);

/// `<stem>.apm.json`, `<stem>.raw-erm.dot`, `<stem>.erm.mmd`, `<stem>.ddl.sql`, ...
std::string artifact_name(const std::string& stem, Stage stage, Format format);

struct CliConfig {
  std::filesystem::path input;
  std::optional<std::filesystem::path> hints;
  Stage stop_after = Stage::reduced;
  std::vector<Format> emit{Format::json};
  std::filesystem::path output_dir = ".";
  bool assume_equivalent = false;
  /// Warnings are fatal (exit 2) once artifacts are written.
  bool strict = false;
  bool color = false;
};

/// translate: 0 ok, 1 model/validation errors, 2 warnings under strict,
/// 3 I/O failure. Artifacts are written all-or-nothing.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// validate: 0 when the model has no errors, 1 otherwise, 3 on I/O failure.
int validate_file(const std::filesystem::path& input, std::ostream& out, std::ostream& err, bool color = false);

/// Re-translates every fixture `<root>/<name>/<name>.bpn` and byte-compares
/// the goldens found beside it. With `update`, rewrites the full golden set.
/// Returns 0 when nothing drifted, 1 otherwise.
int corpus_check(const std::filesystem::path& root, std::ostream& out, std::ostream& err, bool update = false);

}  // namespace platec
