#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace platec {

/// 1-based line/column into a source file. {0,0} means "no source position"
/// (diagnostics about derived models).
struct SourceLocation {
  int line = 0;
  int column = 0;

  bool operator==(const SourceLocation&) const = default;
};

enum class Severity { error, warning };

std::string_view to_string(Severity s);

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  SourceLocation location;

  bool operator==(const Diagnostic&) const = default;
};

/// Ordered list of diagnostics. A model passes iff it holds no errors.
struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  void error(std::string code, std::string message, SourceLocation loc = {});
  void warning(std::string code, std::string message, SourceLocation loc = {});
  void append(const ValidationReport& other);

  bool ok() const { return error_count() == 0; }
  bool empty() const { return diagnostics.empty(); }
  std::size_t error_count() const;
  std::size_t warning_count() const;
  std::size_t count(std::string_view code) const;
  bool has(std::string_view code) const { return count(code) > 0; }

  bool operator==(const ValidationReport&) const = default;
};

/// `file:line:col: severity CODE message`, optionally with ANSI colors.
std::string render(const Diagnostic& d, std::string_view file, bool color = false);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourceLocation loc, std::string message, std::vector<std::string> expected = {});

  const SourceLocation& location() const { return loc_; }
  const std::vector<std::string>& expected() const { return expected_; }
  std::string_view detail() const { return detail_; }

 private:
  SourceLocation loc_;
  std::vector<std::string> expected_;
  std::string detail_;
};

class DuplicateName : public Error {
 public:
  DuplicateName(SourceLocation loc, std::string name, SourceLocation first);

  const SourceLocation& location() const { return loc_; }
  const std::string& name() const { return name_; }

 private:
  SourceLocation loc_;
  std::string name_;
};

/// Raised by the translator when a rule precondition cannot be met
/// (e.g. a one-hot constraint with no plate intersection).
class TranslateError : public Error {
 public:
  TranslateError(std::string code, std::string message);
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Raised by emitters for unsupported format/stage combinations.
class EmitError : public Error {
 public:
  EmitError(std::string code, std::string message);
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace platec
