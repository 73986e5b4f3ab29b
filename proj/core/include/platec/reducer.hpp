#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "platec/diagnostics.hpp"
#include "platec/er_model.hpp"

namespace platec {

/// Human judgments that two relationships state the same fact.
/// Identifiers are relationship names (or any name in their provenance).
struct EquivalenceHints {
  std::vector<std::vector<std::string>> classes;
  bool assume_all = false;

  /// `.hints` format: `equivalent <relA> <relB> [...]` per line, `#` comments.
  /// Throws SyntaxError.
  static EquivalenceHints parse(std::string_view text);
};

struct ReduceResult {
  ERModel model;
  /// UNRESOLVED_DUPLICATE warnings, HINT_MISMATCH errors, ATTR_RENAMED warnings.
  ValidationReport report;
};

/// Degenerate-association merges to fixpoint, then duplicate merging.
/// Idempotent.
ReduceResult reduce(const ERModel& erm, const EquivalenceHints& hints);

/// Exactly one identifying link and no key attributes of its own.
bool is_degenerate(const ERModel& erm, const EntityType& association);

/// Folds a degenerate association into its identifying owner. Non-identifying
/// links become direct relationships owner (1,1) -- far side (link card).
/// No-op unless is_degenerate holds.
void merge_degenerate_association(ERModel& erm, std::string_view association, ValidationReport& report);

/// Collapses hinted duplicate relationships (same endpoints and cardinalities).
void merge_duplicate_relationships(ERModel& erm, const EquivalenceHints& hints, ValidationReport& report);

/// Foreign-key-style attributes, leftover degenerate or keyless associations,
/// duplicate relationships and dangling references.
ValidationReport check_wellformed(const ERModel& erm);

}  // namespace platec
