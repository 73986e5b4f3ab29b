#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "platec/atomicizer.hpp"
#include "platec/er_model.hpp"

namespace platec {

enum class Format { json, dot, mermaid, ddl };

std::string_view to_string(Format f);
std::optional<Format> parse_format(std::string_view s);

struct EmitOptions {
  Format format = Format::json;
  /// DDL flavor. Only "ansi" is implemented.
  std::string dialect = "ansi";
};

// Canonical JSON: sorted keys, two-space indent, trailing newline.
// apm/v1 keeps plates and atoms in declaration order. erm/v1 lists
// everything sorted by name.
std::string emit_json(const AtomicPlateModel& apm);
std::string emit_json(const ERModel& erm);

/// Inverse of emit_json. Throws Error on malformed input.
AtomicPlateModel read_apm_json(std::string_view text);
ERModel read_erm_json(std::string_view text);
/// "apm/v1", "erm/v1", or "" when the document carries no schema tag.
std::string json_schema_of(std::string_view text);

/// Plates as (nested) `cluster_` subgraphs, atoms as nodes, no edges.
std::string emit_dot(const AtomicPlateModel& apm);
/// Entities as boxes, associations as diamonds, attributes as ellipses.
/// Identifying links are double lines; edges carry min-max labels.
std::string emit_dot(const ERModel& erm);

std::string emit_mermaid(const ERModel& erm);

/// Requires stage reduced and a well-formed model; throws EmitError
/// (NOT_REDUCED, NOT_WELLFORMED, UNSUPPORTED_DIALECT).
std::string emit_ddl(const ERModel& erm, std::string_view dialect = "ansi");

/// Dispatch on options. Throws EmitError(UNSUPPORTED) for combinations
/// without an emitter (mermaid/ddl of an APM).
std::string emit(const AtomicPlateModel& apm, const EmitOptions& options);
std::string emit(const ERModel& erm, const EmitOptions& options);

/// UPPER_SNAKE table name for an entity type ("D-T" -> "D_T").
std::string table_name(std::string_view entity);
/// snake_case foreign-key column for an entity ("WordType" -> "word_type_id").
std::string fk_column(std::string_view entity, const std::optional<std::string>& role = std::nullopt);

}  // namespace platec
