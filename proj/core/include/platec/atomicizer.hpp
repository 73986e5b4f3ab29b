#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "platec/model_ast.hpp"

namespace platec {

/// One scalar component schema, e.g. `z_nmk` inside plates {N, M, K}.
struct Atom {
  std::string name;
  std::string source;
  /// Plate names in plate-declaration order, each listed once.
  std::vector<std::string> memberships;
  /// Extra occurrences of plates the source variable repeats in its dims
  /// (a square matrix over N x N has memberships {N} and repeated {N}).
  std::vector<std::string> repeated;
  VariableKind kind = VariableKind::hidden;
  Domain domain = Domain::real;
  std::optional<std::string> onehot_over;

  bool is_self() const { return !repeated.empty(); }
  /// memberships plus repeats, in plate order. Identifies the intersection.
  std::vector<std::string> signature(const std::vector<IndexSet>& plates) const;

  bool operator==(const Atom&) const = default;
};

/// Edge-free model of scalar atoms. Intensional: one atom per variable.
struct AtomicPlateModel {
  std::string name;
  std::vector<IndexSet> plates;
  std::vector<Atom> atoms;

  const IndexSet* find_plate(std::string_view name) const;
  const Atom* find_atom(std::string_view name) const;

  bool operator==(const AtomicPlateModel&) const = default;
};

/// dims plus all transitive parents.
std::set<std::string> membership_closure(const std::set<std::string>& dims, const PlateModel& model);

/// Requires validate(model).ok().
AtomicPlateModel atomicize(const PlateModel& model);

/// Re-encodes an APM as a plate model of scalar-component variables
/// (dims = memberships with repeats, no edges, no transforms).
PlateModel to_plate_model(const AtomicPlateModel& apm);

}  // namespace platec
