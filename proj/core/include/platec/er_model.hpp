#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platec/model_ast.hpp"

namespace platec {

/// Min-max participation. `max == nullopt` is the unbounded "N".
struct Cardinality {
  int min = 0;
  std::optional<int> max;

  static Cardinality one() { return {1, 1}; }
  static Cardinality many(int min = 0) { return {min, std::nullopt}; }

  std::string str() const;  // "(0,N)"
  bool operator==(const Cardinality&) const = default;
  auto operator<=>(const Cardinality&) const = default;
};

enum class EntityKind { plate, global, association };

std::string_view to_string(EntityKind k);

struct Attribute {
  std::string name;
  Domain domain = Domain::real;
  /// Atom the attribute was translated from.
  std::string source;

  bool operator==(const Attribute&) const = default;
};

struct EntityType {
  std::string name;
  EntityKind kind = EntityKind::plate;
  /// plate: {index set}; global: {}; association: member plates (a multiset).
  std::vector<std::string> origin;
  std::vector<std::string> key_attrs;
  std::vector<Attribute> attrs;

  bool is_association() const { return kind == EntityKind::association; }
  const Attribute* find_attr(std::string_view n) const;

  bool operator==(const EntityType&) const = default;
};

struct AssociationLink {
  std::string association;
  std::string target;
  bool identifying = true;
  std::optional<std::string> role;
  Cardinality card_target = Cardinality::many();
  Cardinality card_assoc = Cardinality::one();

  /// `D-T-T.Document`, or `O-O.Object#2` for role-tagged links.
  std::string id() const;

  bool operator==(const AssociationLink&) const = default;
};

struct DirectRelationship {
  std::string name;
  std::string a;
  std::string b;
  Cardinality card_a;
  Cardinality card_b;
  std::vector<std::string> provenance;

  bool operator==(const DirectRelationship&) const = default;
};

enum class ErmStage { structural, raw, reduced, reduced_with_warnings };

std::string_view to_string(ErmStage s);
std::optional<ErmStage> parse_erm_stage(std::string_view s);

struct ERModel {
  std::string name;
  ErmStage stage = ErmStage::raw;
  std::vector<EntityType> entities;
  std::vector<AssociationLink> links;
  std::vector<DirectRelationship> direct_rels;

  const EntityType* find_entity(std::string_view n) const;
  EntityType* find_entity(std::string_view n);
  std::vector<const AssociationLink*> links_of(std::string_view association) const;
  std::size_t association_count() const;
  std::size_t plain_entity_count() const { return entities.size() - association_count(); }

  /// Sorts entities and relationships by name, links by (association, target, role).
  void canonicalize();

  bool operator==(const ERModel&) const = default;
};

}  // namespace platec
