#pragma once
#include <stdexcept>
#include <string>

namespace va {

struct DivisionByZero : std::runtime_error {
  explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

struct PoleAtValue : std::runtime_error {
  explicit PoleAtValue(const std::string& what) : std::runtime_error(what) {}
};

struct ExcludedLevel : std::runtime_error {
  explicit ExcludedLevel(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownGenerator : std::runtime_error {
  explicit UnknownGenerator(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownPreset : std::runtime_error {
  explicit UnknownPreset(const std::string& what) : std::runtime_error(what) {}
};

struct TableIncomplete : std::runtime_error {
  explicit TableIncomplete(const std::string& what) : std::runtime_error(what) {}
};

struct NotInSpan : std::runtime_error {
  explicit NotInSpan(const std::string& what) : std::runtime_error(what) {}
};

struct NotCorrectable : std::runtime_error {
  explicit NotCorrectable(const std::string& what) : std::runtime_error(what) {}
};

struct NoSolution : std::runtime_error {
  explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

struct FixtureError : std::runtime_error {
  explicit FixtureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace va
