#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace platec::testing {

namespace fs = std::filesystem;

fs::path corpus_dir() { return PLATEC_CORPUS_DIR; }

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

PlateModel fixture(const std::string& name) { return parse(read_text(corpus_dir() / name / (name + ".bpn"))); }

EquivalenceHints fixture_hints(const std::string& name) {
  fs::path p = corpus_dir() / name / (name + ".hints");
  return fs::exists(p) ? EquivalenceHints::parse(read_text(p)) : EquivalenceHints{};
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(corpus_dir())) {
    if (e.is_directory() && fs::exists(e.path() / (e.path().filename().string() + ".bpn"))) {
      out.push_back(e.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PlateModel ModelGenerator::next() {
  static const std::vector<std::string> labels = {"", "Documents", "Tokens", "Topics", "Words", "Users",
                                                  "Items", "Classes", "Series", "Boxes", "Genes"};
  PlateModel m;
  m.name = "Random" + std::to_string(counter_++);
  int n_index = uniform(0, 5);
  for (int i = 0; i < n_index; ++i) {
    IndexSet ix;
    ix.name = std::string(1, static_cast<char>('A' + i));
    ix.label = labels[static_cast<std::size_t>(uniform(0, static_cast<int>(labels.size()) - 1))];
    if (i > 0 && chance(0.3)) ix.parent = m.index_sets[static_cast<std::size_t>(uniform(0, i - 1))].name;
    ix.nonempty = ix.parent && chance(0.5);
    m.index_sets.push_back(std::move(ix));
  }
  int n_vars = uniform(0, 7);
  for (int i = 0; i < n_vars; ++i) {
    Variable v;
    v.name = "v" + std::to_string(i);
    int k = uniform(0, 3);
    v.kind = static_cast<VariableKind>(k);
    v.domain = static_cast<Domain>(uniform(0, 2));
    if (n_index > 0) {
      int nd = uniform(0, std::min(3, n_index));
      for (int d = 0; d < nd; ++d) {
        std::string ix = m.index_sets[static_cast<std::size_t>(uniform(0, n_index - 1))].name;
        if (std::find(v.dims.begin(), v.dims.end(), ix) == v.dims.end() || chance(0.3)) v.dims.push_back(ix);
      }
    }
    if (v.domain == Domain::bit && !v.dims.empty() && v.kind != VariableKind::deterministic && chance(0.5)) {
      v.onehot_over = v.dims[static_cast<std::size_t>(uniform(0, static_cast<int>(v.dims.size()) - 1))];
    }
    if (v.kind == VariableKind::deterministic) {
      Transform t;
      t.expression = "f(" + std::to_string(i) + ")";
      for (int j = 0; j < i; ++j) {
        if (chance(0.4)) t.uses.push_back("v" + std::to_string(j));
      }
      v.transform = std::move(t);
    }
    m.variables.push_back(std::move(v));
  }
  for (int i = 0; i < n_vars; ++i) {
    for (int j = i + 1; j < n_vars; ++j) {
      if (chance(0.2)) m.edges.push_back({"v" + std::to_string(i), "v" + std::to_string(j), {}});
    }
  }
  return m;
}

PlateModel ModelGenerator::next_valid() {
  for (;;) {
    PlateModel m = next();
    if (validate(m).ok()) return m;
  }
}

TempDir::TempDir() {
  static int serial = 0;
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("platec-test-" + std::to_string(rd()) + "-" + std::to_string(serial++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace platec::testing
