#pragma once

#include <string>
#include <vector>

#include "platec/atomicizer.hpp"
#include "platec/er_model.hpp"

namespace platec {

struct TranslateOptions {
  /// false stops before the one-hot rule (the first intermediate ERM).
  bool apply_constraints = true;
  /// Rule order switch; both orders must reach the same model.
  bool onehot_before_nesting = false;
};

/// Applies the translation rules in order: plate entities, intersection
/// associations, attribute placement, nesting, one-hot. Self-relationships
/// come out of the intersection rule as role-tagged links.
/// Throws TranslateError (ONEHOT_WITHOUT_INTERSECTION).
ERModel translate(const AtomicPlateModel& apm, const TranslateOptions& options = {});

/// Singular CamelCase name from the plate label ("Documents" -> "Document"),
/// falling back to the index-set identifier.
std::string entity_name_for_plate(const IndexSet& plate);

EntityType rule_entity_for_plate(const IndexSet& plate);

struct AssociationParts {
  EntityType entity;
  std::vector<AssociationLink> links;
};

/// `members` lists plate entities in plate order; a self-intersection repeats
/// an entity. Default name is the hyphen-joined member initials.
AssociationParts rule_association_for_intersection(const std::vector<EntityType>& members, std::string name = {});

/// Adds the atom as an attribute of its plate entity, its association, or
/// the lazily created Global entity.
void rule_attribute_placement(const Atom& atom, const std::vector<IndexSet>& plates, ERModel& erm);

/// Demotes the parent link of every association that contains both entities.
void rule_nesting(ERModel& erm, const IndexSet& child, const IndexSet& parent);

/// Demotes the link toward the summed-over entity and drops the attribute.
void rule_onehot(ERModel& erm, const Atom& atom, const std::vector<IndexSet>& plates);

}  // namespace platec
