#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "platec/emitters.hpp"

namespace platec {

namespace {

std::string q(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

}  // namespace

std::string emit_dot(const AtomicPlateModel& apm) {
  std::ostringstream os;
  os << "digraph " << q(apm.name) << " {\n";
  os << "  graph [compound=true, fontname=\"Helvetica\"];\n";
  os << "  node [fontname=\"Helvetica\"];\n";

  auto depth = [&](const std::string& plate) {
    int d = 0;
    for (const IndexSet* p = apm.find_plate(plate); p && p->parent; p = apm.find_plate(*p->parent)) ++d;
    return d;
  };
  // Each atom is drawn inside its deepest plate; the label keeps the full set.
  std::map<std::string, std::vector<const Atom*>> placed;
  for (const auto& a : apm.atoms) {
    std::string home;
    int best = -1;
    for (const auto& m : a.memberships) {
      if (depth(m) >= best) {
        best = depth(m);
        home = m;
      }
    }
    placed[home].push_back(&a);
  }

  auto atom_node = [&](const Atom& a, const std::string& indent) {
    os << indent << q(a.name) << " [";
    switch (a.kind) {
      case VariableKind::observed: os << "shape=circle, style=filled, fillcolor=\"gray80\""; break;
      case VariableKind::hyper: os << "shape=circle, style=filled, fillcolor=\"black\", fontcolor=\"white\""; break;
      case VariableKind::deterministic: os << "shape=doublecircle"; break;
      case VariableKind::hidden: os << "shape=circle"; break;
    }
    os << ", tooltip=" << q("{" + join(a.memberships, ",") + "}") << "];\n";
  };

  std::function<void(const IndexSet&, const std::string&)> cluster = [&](const IndexSet& p, const std::string& indent) {
    os << indent << "subgraph " << q("cluster_" + p.name) << " {\n";
    std::string label = p.label.empty() ? p.name : p.label + " (" + p.name + ")";
    os << indent << "  label=" << q(label) << ";\n";
    for (const auto* a : placed[p.name]) atom_node(*a, indent + "  ");
    for (const auto& c : apm.plates) {
      if (c.parent && *c.parent == p.name) cluster(c, indent + "  ");
    }
    os << indent << "}\n";
  };
  for (const auto& p : apm.plates) {
    if (!p.parent || !apm.find_plate(*p.parent)) cluster(p, "  ");
  }
  for (const auto* a : placed[""]) atom_node(*a, "  ");
  os << "}\n";
  return os.str();
}

std::string emit_dot(const ERModel& model) {
  ERModel erm = model;
  erm.canonicalize();
  std::ostringstream os;
  os << "digraph " << q(erm.name) << " {\n";
  os << "  graph [rankdir=LR, fontname=\"Helvetica\"];\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  os << "  edge [dir=none, fontname=\"Helvetica\", fontsize=10];\n";
  for (const auto& e : erm.entities) {
    if (e.is_association()) {
      os << "  " << q(e.name) << " [shape=diamond, class=\"association\"];\n";
    } else {
      os << "  " << q(e.name) << " [shape=box, class=\"entity\"];\n";
    }
    for (const auto& k : e.key_attrs) {
      std::string id = e.name + "." + k;
      os << "  " << q(id) << " [shape=ellipse, class=\"attribute\", label=<<u>" << k << "</u>>];\n";
      os << "  " << q(e.name) << " -> " << q(id) << ";\n";
    }
    for (const auto& a : e.attrs) {
      std::string id = e.name + "." + a.name;
      os << "  " << q(id) << " [shape=ellipse, class=\"attribute\", label=" << q(a.name) << "];\n";
      os << "  " << q(e.name) << " -> " << q(id) << ";\n";
    }
  }
  for (const auto& l : erm.links) {
    os << "  " << q(l.association) << " -> " << q(l.target) << " [class=\"link\"";
    if (l.identifying) os << ", color=\"black:invis:black\"";
    if (l.role) os << ", label=" << q(*l.role);
    os << ", taillabel=" << q(l.card_assoc.str()) << ", headlabel=" << q(l.card_target.str()) << "];\n";
  }
  for (const auto& r : erm.direct_rels) {
    os << "  " << q(r.a) << " -> " << q(r.b) << " [class=\"relationship\", label=" << q(r.name)
       << ", taillabel=" << q(r.card_a.str()) << ", headlabel=" << q(r.card_b.str()) << "];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

std::string mermaid_id(std::string_view s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

// Crow's-foot end symbol for the side whose multiplicity is `c`.
std::string left_end(const Cardinality& c) {
  if (c.max && *c.max == 1) return c.min >= 1 ? "||" : "|o";
  return c.min >= 1 ? "}|" : "}o";
}

std::string right_end(const Cardinality& c) {
  if (c.max && *c.max == 1) return c.min >= 1 ? "||" : "o|";
  return c.min >= 1 ? "|{" : "o{";
}

}  // namespace

std::string emit_mermaid(const ERModel& model) {
  ERModel erm = model;
  erm.canonicalize();
  std::ostringstream os;
  os << "erDiagram\n";
  os << "  %% " << erm.name << " (" << to_string(erm.stage) << ")\n";
  for (const auto& e : erm.entities) {
    if (e.attrs.empty() && e.key_attrs.empty()) continue;
    os << "  " << mermaid_id(e.name) << " {\n";
    for (const auto& k : e.key_attrs) os << "    int " << k << " PK\n";
    for (const auto& a : e.attrs) os << "    " << to_string(a.domain) << ' ' << a.name << '\n';
    os << "  }\n";
  }
  // Min-max participation of X sits at the far end in crow's-foot notation.
  for (const auto& l : erm.links) {
    os << "  " << mermaid_id(l.target) << ' ' << left_end(l.card_assoc) << (l.identifying ? "--" : "..")
       << right_end(l.card_target) << ' ' << mermaid_id(l.association) << " : " << q(l.id()) << '\n';
  }
  for (const auto& r : erm.direct_rels) {
    os << "  " << mermaid_id(r.a) << ' ' << left_end(r.card_b) << ".." << right_end(r.card_a) << ' '
       << mermaid_id(r.b) << " : " << q(r.name) << '\n';
  }
  return os.str();
}

}  // namespace platec
