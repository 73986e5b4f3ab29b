#include "platec/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include "platec/translator.hpp"

namespace platec {

namespace fs = std::filesystem;

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::apm: return "apm";
    case Stage::structural_erm: return "structural-erm";
    case Stage::raw_erm: return "raw-erm";
    case Stage::reduced: return "reduced";
  }
  return "reduced";
}

std::optional<Stage> parse_stage(std::string_view s) {
  for (auto st : {Stage::apm, Stage::structural_erm, Stage::raw_erm, Stage::reduced}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

Compilation compile(const PlateModel& model, const EquivalenceHints& hints) {
  Compilation c;
  c.apm = atomicize(model);
  c.structural = translate(c.apm, {.apply_constraints = false});
  c.raw = translate(c.apm);
  c.reduced = reduce(c.raw, hints);
  return c;
}

std::string artifact_name(const std::string& stem, Stage stage, Format format) {
  if (format == Format::ddl) return stem + ".ddl.sql";
  std::string mid = stage == Stage::reduced ? "erm" : std::string(to_string(stage));
  std::string ext = format == Format::json ? "json" : format == Format::dot ? "dot" : "mmd";
  return stem + "." + mid + "." + ext;
}

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + p.string() + "'");
  return ss.str();
}

// Writes every file under a temporary name first, then renames them in place.
void write_all(const fs::path& dir, const std::map<std::string, std::string>& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    for (const auto& [tmp, _] : staged) fs::remove(tmp, ec);
  };
  for (const auto& [name, content] : files) {
    fs::path final_path = dir / name;
    fs::path tmp = dir / ("." + name + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) staged.emplace_back(tmp, final_path);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write '" + final_path.string() + "'");
    }
  }
  for (const auto& [tmp, final_path] : staged) {
    fs::rename(tmp, final_path, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move output into '" + final_path.string() + "': " + ec.message());
    }
  }
}

void print_report(const ValidationReport& r, const std::string& file, std::ostream& err, bool color) {
  for (const auto& d : r.diagnostics) err << render(d, file, color) << '\n';
}

Diagnostic syntax_diagnostic(const SyntaxError& e) {
  return {Severity::error, "SYNTAX_ERROR", e.what(), e.location()};
}

// A model at some checkpoint, as loaded from an input file.
struct Loaded {
  Stage stage = Stage::apm;
  std::optional<PlateModel> plate;
  std::optional<AtomicPlateModel> apm;
  std::optional<ERModel> erm;
};

std::string summary(const ERModel& m) {
  std::ostringstream os;
  os << m.name << ": " << m.plain_entity_count() << " entities, " << m.association_count() << " associations, "
     << m.direct_rels.size() << " relationships (" << to_string(m.stage) << ")";
  return os.str();
}

}  // namespace

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string file = cfg.input.string();
  std::string text;
  EquivalenceHints hints;
  try {
    text = read_file(cfg.input);
    if (cfg.hints) {
      std::string htext = read_file(*cfg.hints);
      try {
        hints = EquivalenceHints::parse(htext);
      } catch (const SyntaxError& e) {
        err << render(syntax_diagnostic(e), cfg.hints->string(), cfg.color) << '\n';
        return 1;
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  hints.assume_all = hints.assume_all || cfg.assume_equivalent;

  ValidationReport warnings;
  Loaded in;
  try {
    std::string schema = json_schema_of(text);
    if (schema == "apm/v1") {
      in.stage = Stage::apm;
      in.apm = read_apm_json(text);
    } else if (schema == "erm/v1") {
      in.erm = read_erm_json(text);
      switch (in.erm->stage) {
        case ErmStage::structural:
          err << file << ": error: cannot resume from the structural stage; start from the APM instead\n";
          return 1;
        case ErmStage::raw: in.stage = Stage::raw_erm; break;
        default: in.stage = Stage::reduced; break;
      }
    } else {
      PlateModel pm;
      try {
        pm = parse(text);
      } catch (const SyntaxError& e) {
        err << render(syntax_diagnostic(e), file, cfg.color) << '\n';
        return 1;
      } catch (const DuplicateName& e) {
        err << render({Severity::error, "DUPLICATE_NAME", e.what(), e.location()}, file, cfg.color) << '\n';
        return 1;
      }
      ValidationReport r = validate(pm);
      print_report(r, file, err, cfg.color);
      if (!r.ok()) return 1;
      warnings.append(r);
      in.plate = std::move(pm);
      in.apm = atomicize(*in.plate);
      in.stage = Stage::apm;
    }
  } catch (const Error& e) {
    err << file << ": error: " << e.what() << '\n';
    return 1;
  }

  if (cfg.stop_after < in.stage) {
    err << file << ": error: input is already at stage '" << to_string(in.stage) << "', cannot stop after '"
        << to_string(cfg.stop_after) << "'\n";
    return 1;
  }

  const std::string stem = cfg.input.filename().string().substr(0, cfg.input.filename().string().find('.'));
  std::map<std::string, std::string> files;
  try {
    if (cfg.stop_after == Stage::apm) {
      for (auto f : cfg.emit) files[artifact_name(stem, Stage::apm, f)] = emit(*in.apm, {.format = f});
      out << in.apm->name << ": " << in.apm->plates.size() << " plates, " << in.apm->atoms.size()
          << " atoms, 0 edges (apm)\n";
    } else {
      ERModel erm;
      if (in.stage == Stage::apm) {
        erm = translate(*in.apm, {.apply_constraints = cfg.stop_after != Stage::structural_erm});
      } else {
        erm = *in.erm;
      }
      if (cfg.stop_after == Stage::reduced) {
        ReduceResult rr = reduce(erm, hints);
        print_report(rr.report, file, err, cfg.color);
        if (!rr.report.ok()) return 1;
        warnings.append(rr.report);
        erm = std::move(rr.model);
      }
      for (auto f : cfg.emit) files[artifact_name(stem, cfg.stop_after, f)] = emit(erm, {.format = f});
      out << summary(erm) << '\n';
    }
  } catch (const TranslateError& e) {
    err << render({Severity::error, e.code(), e.what(), {}}, file, cfg.color) << '\n';
    return 1;
  } catch (const EmitError& e) {
    err << render({Severity::error, e.code(), e.what(), {}}, file, cfg.color) << '\n';
    return 1;
  }

  try {
    write_all(cfg.output_dir, files);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  if (cfg.strict && warnings.warning_count() > 0) return 2;
  return 0;
}

int validate_file(const fs::path& input, std::ostream& out, std::ostream& err, bool color) {
  std::string text;
  try {
    text = read_file(input);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  const std::string file = input.string();
  try {
    PlateModel pm = parse(text);
    ValidationReport r = validate(pm);
    print_report(r, file, err, color);
    out << file << ": " << r.error_count() << " error(s), " << r.warning_count() << " warning(s)\n";
    return r.ok() ? 0 : 1;
  } catch (const SyntaxError& e) {
    err << render(syntax_diagnostic(e), file, color) << '\n';
  } catch (const DuplicateName& e) {
    err << render({Severity::error, "DUPLICATE_NAME", e.what(), e.location()}, file, color) << '\n';
  }
  return 1;
}

namespace {

struct FixtureResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> problems;
};

// Full golden set for one fixture, keyed by file name.
std::map<std::string, std::string> goldens_for(const fs::path& dir, const std::string& name) {
  PlateModel pm = parse(read_file(dir / (name + ".bpn")));
  ValidationReport r = validate(pm);
  if (!r.ok()) throw Error("fixture does not validate: " + r.diagnostics.front().message);
  EquivalenceHints hints;
  if (fs::exists(dir / (name + ".hints"))) hints = EquivalenceHints::parse(read_file(dir / (name + ".hints")));
  Compilation c = compile(pm, hints);
  std::map<std::string, std::string> g;
  g[artifact_name(name, Stage::apm, Format::json)] = emit_json(c.apm);
  g[artifact_name(name, Stage::apm, Format::dot)] = emit_dot(c.apm);
  g[artifact_name(name, Stage::structural_erm, Format::json)] = emit_json(c.structural);
  g[artifact_name(name, Stage::raw_erm, Format::json)] = emit_json(c.raw);
  g[artifact_name(name, Stage::reduced, Format::json)] = emit_json(c.reduced.model);
  g[artifact_name(name, Stage::reduced, Format::dot)] = emit_dot(c.reduced.model);
  g[artifact_name(name, Stage::reduced, Format::mermaid)] = emit_mermaid(c.reduced.model);
  if (c.reduced.model.stage == ErmStage::reduced) {
    g[artifact_name(name, Stage::reduced, Format::ddl)] = emit_ddl(c.reduced.model);
  }
  return g;
}

FixtureResult check_fixture(const fs::path& dir, bool update) {
  FixtureResult res;
  res.name = dir.filename().string();
  try {
    auto goldens = goldens_for(dir, res.name);
    if (update) {
      write_all(dir, goldens);
      res.checked = goldens.size();
      return res;
    }
    for (const auto& [file, expected] : goldens) {
      fs::path p = dir / file;
      if (!fs::exists(p)) continue;
      std::string actual = read_file(p);
      ++res.checked;
      if (actual == expected) continue;
      auto [a, b] = std::mismatch(actual.begin(), actual.end(), expected.begin(), expected.end());
      res.problems.push_back(p.string() + ": differs from regenerated output at byte " +
                             std::to_string(std::distance(actual.begin(), a)));
    }
    if (res.checked == 0) res.problems.push_back(dir.string() + ": no golden files");
  } catch (const std::exception& e) {
    res.problems.push_back(dir.string() + ": " + e.what());
  }
  return res;
}

}  // namespace

int corpus_check(const fs::path& root, std::ostream& out, std::ostream& err, bool update) {
  std::vector<fs::path> dirs;
  std::error_code ec;
  for (fs::directory_iterator it(root, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_directory() && fs::exists(it->path() / (it->path().filename().string() + ".bpn"))) {
      dirs.push_back(it->path());
    }
  }
  if (ec) {
    err << "error: cannot list corpus '" << root.string() << "': " << ec.message() << '\n';
    return 1;
  }
  std::sort(dirs.begin(), dirs.end());

  // One task per fixture.
  std::vector<std::future<FixtureResult>> jobs;
  for (const auto& d : dirs) jobs.push_back(std::async(std::launch::async, check_fixture, d, update));

  int failures = 0;
  for (auto& j : jobs) {
    FixtureResult r = j.get();
    if (r.problems.empty()) {
      out << (update ? "updated " : "ok ") << r.name << " (" << r.checked << " files)\n";
    } else {
      ++failures;
      for (const auto& p : r.problems) err << "drift: " << p << '\n';
    }
  }
  out << dirs.size() << " fixtures checked, " << failures << " drifted\n";
  return failures == 0 && !dirs.empty() ? 0 : 1;
}

}  // namespace platec
