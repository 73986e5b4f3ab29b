#include "platec/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace platec {

std::string_view to_string(Severity s) {
  return s == Severity::error ? "error" : "warning";
}

void ValidationReport::error(std::string code, std::string message, SourceLocation loc) {
  diagnostics.push_back({Severity::error, std::move(code), std::move(message), loc});
}

void ValidationReport::warning(std::string code, std::string message, SourceLocation loc) {
  diagnostics.push_back({Severity::warning, std::move(code), std::move(message), loc});
}

void ValidationReport::append(const ValidationReport& other) {
  diagnostics.insert(diagnostics.end(), other.diagnostics.begin(), other.diagnostics.end());
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [](const Diagnostic& d) { return d.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const {
  return diagnostics.size() - error_count();
}

std::size_t ValidationReport::count(std::string_view code) const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.code == code; }));
}

std::string render(const Diagnostic& d, std::string_view file, bool color) {
  std::ostringstream os;
  os << file << ':' << d.location.line << ':' << d.location.column << ": ";
  if (color) {
    os << (d.severity == Severity::error ? "\x1b[1;31m" : "\x1b[1;33m") << to_string(d.severity) << "\x1b[0m";
  } else {
    os << to_string(d.severity);
  }
  os << ' ' << d.code << ' ' << d.message;
  return os.str();
}

namespace {

std::string syntax_message(const std::string& detail, const std::vector<std::string>& expected) {
  std::string msg = detail;
  if (!expected.empty()) {
    msg += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ')';
  }
  return msg;
}

}  // namespace

SyntaxError::SyntaxError(SourceLocation loc, std::string message, std::vector<std::string> expected)
    : Error(syntax_message(message, expected)), loc_(loc), expected_(std::move(expected)), detail_(std::move(message)) {}

DuplicateName::DuplicateName(SourceLocation loc, std::string name, SourceLocation first)
    : Error("'" + name + "' is already declared at line " + std::to_string(first.line)),
      loc_(loc),
      name_(std::move(name)) {}

TranslateError::TranslateError(std::string code, std::string message)
    : Error(std::move(message)), code_(std::move(code)) {}

EmitError::EmitError(std::string code, std::string message) : Error(std::move(message)), code_(std::move(code)) {}

}  // namespace platec
