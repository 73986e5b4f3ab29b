#pragma once

// Plate-model DSL: AST, parser, canonical printer and structural validation.
//
//   model LDA
//   index N "Documents"
//   index M in N "Tokens" nonempty
//   var z : bit[M,K] hidden onehot over K
//   def xp : real[K] = x^k uses x
//   edge theta -> z

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platec/diagnostics.hpp"

namespace platec {

enum class VariableKind { observed, hidden, hyper, deterministic };
enum class Domain { real, bit, integer };

std::string_view to_string(VariableKind k);
std::string_view to_string(Domain d);
std::optional<VariableKind> parse_kind(std::string_view s);
std::optional<Domain> parse_domain(std::string_view s);

struct IndexSet {
  std::string name;
  std::string label;
  std::optional<std::string> parent;
  /// Every parent instance covers at least one instance of this set.
  bool nonempty = false;
  SourceLocation location;

  bool operator==(const IndexSet&) const = default;
};

/// Opaque deterministic transform. The expression is never evaluated.
struct Transform {
  std::string expression;
  std::vector<std::string> uses;

  bool operator==(const Transform&) const = default;
};

struct Variable {
  std::string name;
  VariableKind kind = VariableKind::hidden;
  Domain domain = Domain::real;
  std::vector<std::string> dims;
  std::optional<std::string> onehot_over;
  std::optional<Transform> transform;
  SourceLocation location;

  bool operator==(const Variable&) const = default;
};

struct Edge {
  std::string src;
  std::string dst;
  SourceLocation location;

  bool operator==(const Edge&) const = default;
};

struct PlateModel {
  std::string name;
  std::vector<IndexSet> index_sets;
  std::vector<Variable> variables;
  std::vector<Edge> edges;

  const IndexSet* find_index(std::string_view name) const;
  const Variable* find_variable(std::string_view name) const;

  bool operator==(const PlateModel&) const = default;
};

/// Parses DSL text. Throws SyntaxError on the first malformed line and
/// DuplicateName when two declarations share an identifier.
PlateModel parse(std::string_view text);

/// Canonical source form; parse(print(m)) reproduces m up to source locations.
std::string print(const PlateModel& model);

/// Checks every structural invariant of the AST. Pure; never throws.
ValidationReport validate(const PlateModel& model);

/// Copy of `model` with every source location cleared.
PlateModel strip_locations(PlateModel model);

}  // namespace platec
