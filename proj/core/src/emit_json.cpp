#include <nlohmann/json.hpp>

#include "platec/emitters.hpp"

namespace platec {

using nlohmann::json;

namespace {

json opt(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json card(const Cardinality& c) { return json::array({c.min, c.max ? json(*c.max) : json("N")}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Cardinality read_card(const json& j) {
  Cardinality c;
  c.min = j.at(0).get<int>();
  if (j.at(1).is_string()) {
    if (j.at(1).get<std::string>() != "N") throw Error("cardinality maximum must be an integer or \"N\"");
  } else {
    c.max = j.at(1).get<int>();
  }
  return c;
}

std::optional<std::string> read_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

template <typename T, typename Parse>
T read_enum(const json& j, Parse parse, const char* what) {
  auto v = parse(j.get<std::string>());
  if (!v) throw Error(std::string("unknown ") + what + " '" + j.get<std::string>() + "'");
  return *v;
}

std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  for (auto k : {EntityKind::plate, EntityKind::global, EntityKind::association}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

json parse_doc(std::string_view text, std::string_view schema) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != schema) {
    throw Error("expected a JSON document with schema \"" + std::string(schema) + "\"");
  }
  return j;
}

}  // namespace

std::string emit_json(const AtomicPlateModel& apm) {
  json plates = json::array();
  for (const auto& p : apm.plates) {
    plates.push_back({{"name", p.name}, {"label", p.label}, {"parent", opt(p.parent)}, {"nonempty", p.nonempty}});
  }
  json atoms = json::array();
  for (const auto& a : apm.atoms) {
    atoms.push_back({{"name", a.name},
                     {"source", a.source},
                     {"memberships", a.memberships},
                     {"repeated", a.repeated},
                     {"self", a.is_self()},
                     {"kind", to_string(a.kind)},
                     {"domain", to_string(a.domain)},
                     {"onehot_over", opt(a.onehot_over)}});
  }
  json doc = {{"schema", "apm/v1"}, {"name", apm.name}, {"plates", plates}, {"atoms", atoms}, {"edges", json::array()}};
  return dump(doc);
}

std::string emit_json(const ERModel& model) {
  ERModel erm = model;
  erm.canonicalize();
  json entities = json::array();
  for (const auto& e : erm.entities) {
    json attrs = json::array();
    for (const auto& a : e.attrs) attrs.push_back({{"name", a.name}, {"domain", to_string(a.domain)}, {"source", a.source}});
    entities.push_back({{"name", e.name},
                        {"kind", to_string(e.kind)},
                        {"is_association", e.is_association()},
                        {"origin", e.origin},
                        {"key_attrs", e.key_attrs},
                        {"attrs", attrs}});
  }
  json links = json::array();
  for (const auto& l : erm.links) {
    links.push_back({{"id", l.id()},
                     {"association", l.association},
                     {"target", l.target},
                     {"identifying", l.identifying},
                     {"role", opt(l.role)},
                     {"card_target", card(l.card_target)},
                     {"card_assoc", card(l.card_assoc)}});
  }
  json rels = json::array();
  for (const auto& r : erm.direct_rels) {
    rels.push_back({{"name", r.name},
                    {"a", r.a},
                    {"b", r.b},
                    {"card_a", card(r.card_a)},
                    {"card_b", card(r.card_b)},
                    {"provenance", r.provenance}});
  }
  json doc = {{"schema", "erm/v1"}, {"name", erm.name},   {"stage", to_string(erm.stage)},
              {"entities", entities}, {"links", links}, {"direct_rels", rels}};
  return dump(doc);
}

std::string json_schema_of(std::string_view text) {
  try {
    json j = json::parse(text);
    return j.is_object() ? j.value("schema", "") : "";
  } catch (const json::exception&) {
    return "";
  }
}

AtomicPlateModel read_apm_json(std::string_view text) {
  json j = parse_doc(text, "apm/v1");
  try {
    AtomicPlateModel apm;
    apm.name = j.at("name").get<std::string>();
    for (const auto& p : j.at("plates")) {
      IndexSet ix;
      ix.name = p.at("name").get<std::string>();
      ix.label = p.value("label", "");
      ix.parent = read_opt(p, "parent");
      ix.nonempty = p.value("nonempty", false);
      apm.plates.push_back(std::move(ix));
    }
    for (const auto& a : j.at("atoms")) {
      Atom atom;
      atom.name = a.at("name").get<std::string>();
      atom.source = a.at("source").get<std::string>();
      atom.memberships = a.at("memberships").get<std::vector<std::string>>();
      atom.repeated = a.value("repeated", std::vector<std::string>{});
      atom.kind = read_enum<VariableKind>(a.at("kind"), parse_kind, "variable kind");
      atom.domain = read_enum<Domain>(a.at("domain"), parse_domain, "domain");
      atom.onehot_over = read_opt(a, "onehot_over");
      for (const auto& m : atom.memberships) {
        if (!apm.find_plate(m)) throw Error("atom '" + atom.name + "' references unknown plate '" + m + "'");
      }
      apm.atoms.push_back(std::move(atom));
    }
    if (j.contains("edges") && !j.at("edges").empty()) throw Error("an atomic plate model carries no edges");
    return apm;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid apm/v1 document: ") + e.what());
  }
}

ERModel read_erm_json(std::string_view text) {
  json j = parse_doc(text, "erm/v1");
  try {
    ERModel erm;
    erm.name = j.at("name").get<std::string>();
    erm.stage = read_enum<ErmStage>(j.at("stage"), parse_erm_stage, "stage");
    for (const auto& e : j.at("entities")) {
      EntityType et;
      et.name = e.at("name").get<std::string>();
      et.kind = read_enum<EntityKind>(e.at("kind"), parse_entity_kind, "entity kind");
      et.origin = e.at("origin").get<std::vector<std::string>>();
      et.key_attrs = e.at("key_attrs").get<std::vector<std::string>>();
      for (const auto& a : e.at("attrs")) {
        et.attrs.push_back({a.at("name").get<std::string>(), read_enum<Domain>(a.at("domain"), parse_domain, "domain"),
                            a.at("source").get<std::string>()});
      }
      erm.entities.push_back(std::move(et));
    }
    for (const auto& l : j.at("links")) {
      AssociationLink link;
      link.association = l.at("association").get<std::string>();
      link.target = l.at("target").get<std::string>();
      link.identifying = l.at("identifying").get<bool>();
      link.role = read_opt(l, "role");
      link.card_target = read_card(l.at("card_target"));
      link.card_assoc = read_card(l.at("card_assoc"));
      erm.links.push_back(std::move(link));
    }
    for (const auto& r : j.at("direct_rels")) {
      erm.direct_rels.push_back({r.at("name").get<std::string>(), r.at("a").get<std::string>(),
                                 r.at("b").get<std::string>(), read_card(r.at("card_a")), read_card(r.at("card_b")),
                                 r.at("provenance").get<std::vector<std::string>>()});
    }
    erm.canonicalize();
    return erm;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid erm/v1 document: ") + e.what());
  }
}

}  // namespace platec
