#include "platec/atomicizer.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace platec {

std::vector<std::string> Atom::signature(const std::vector<IndexSet>& plates) const {
  std::vector<std::string> out;
  for (const auto& p : plates) {
    if (std::find(memberships.begin(), memberships.end(), p.name) == memberships.end()) continue;
    out.push_back(p.name);
    auto extra = std::count(repeated.begin(), repeated.end(), p.name);
    for (long i = 0; i < extra; ++i) out.push_back(p.name);
  }
  return out;
}

const IndexSet* AtomicPlateModel::find_plate(std::string_view n) const {
  auto it = std::find_if(plates.begin(), plates.end(), [&](const IndexSet& p) { return p.name == n; });
  return it == plates.end() ? nullptr : &*it;
}

const Atom* AtomicPlateModel::find_atom(std::string_view n) const {
  auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.name == n; });
  return it == atoms.end() ? nullptr : &*it;
}

std::set<std::string> membership_closure(const std::set<std::string>& dims, const PlateModel& model) {
  std::set<std::string> out;
  for (const auto& d : dims) {
    std::string cur = d;
    // Bounded by the index count; parent cycles stop here.
    for (std::size_t guard = 0; guard <= model.index_sets.size(); ++guard) {
      if (!out.insert(cur).second && cur != d) break;
      const IndexSet* ix = model.find_index(cur);
      if (!ix || !ix->parent) break;
      cur = *ix->parent;
    }
  }
  return out;
}

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string component_name(const std::string& source, const std::vector<std::string>& signature) {
  if (signature.empty()) return source;
  bool short_names = std::all_of(signature.begin(), signature.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out = source + "_";
  for (std::size_t i = 0; i < signature.size(); ++i) {
    if (i && !short_names) out += '_';
    out += lower(signature[i]);
  }
  return out;
}

}  // namespace

AtomicPlateModel atomicize(const PlateModel& model) {
  AtomicPlateModel apm;
  apm.name = model.name;

  std::set<std::string> used;
  std::vector<Atom> atoms;
  atoms.reserve(model.variables.size());
  // One atom per variable, deterministic transforms included.
  for (const auto& v : model.variables) {
    std::set<std::string> dims(v.dims.begin(), v.dims.end());
    auto closure = membership_closure(dims, model);
    Atom a;
    a.source = v.name;
    a.kind = v.kind;
    a.domain = v.domain;
    a.onehot_over = v.onehot_over;
    for (const auto& ix : model.index_sets) {
      if (!closure.count(ix.name)) continue;
      a.memberships.push_back(ix.name);
      auto n = std::count(v.dims.begin(), v.dims.end(), ix.name);
      for (long i = 1; i < n; ++i) a.repeated.push_back(ix.name);
    }
    used.insert(closure.begin(), closure.end());
    atoms.push_back(std::move(a));
  }
  for (const auto& ix : model.index_sets) {
    if (used.count(ix.name)) {
      IndexSet p = ix;
      p.location = {};
      apm.plates.push_back(std::move(p));
    }
  }
  for (auto& a : atoms) a.name = component_name(a.source, a.signature(apm.plates));
  apm.atoms = std::move(atoms);
  return apm;
}

PlateModel to_plate_model(const AtomicPlateModel& apm) {
  PlateModel pm;
  pm.name = apm.name;
  pm.index_sets = apm.plates;
  for (const auto& a : apm.atoms) {
    Variable v;
    v.name = a.source;
    v.kind = a.kind;
    v.domain = a.domain;
    v.dims = a.signature(apm.plates);
    v.onehot_over = a.onehot_over;
    if (a.kind == VariableKind::deterministic) v.transform = Transform{a.source, {}};
    pm.variables.push_back(std::move(v));
  }
  return pm;
}

}  // namespace platec
