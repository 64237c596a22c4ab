#pragma once

// Text interchange for models and formula bundles.
//
// Model files have the sections [agents], [states], [initial],
// [propositions], [labeling], [actions], [transitions] and [observation];
// see README.md for the layout. A missing [observation] section, or an agent
// missing from it, means that agent observes the state exactly.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amc/icgs.hpp"

namespace amc {

// Throws ParseError with the line and column of the offending token.
Icgs parse_model(std::string_view text);
// Canonical text: declaration order everywhere. Transitions are written one
// entry per line, or as one row per state when the table has more than
// kRowFormThreshold entries.
std::string export_model(const Icgs& model);
inline constexpr std::uint64_t kRowFormThreshold = 100000;

Icgs load_model(const std::string& path);
void save_model(const Icgs& model, const std::string& path);

// Named formulas and coalition aliases that go with a model.
struct FormulaBundle {
  std::string label;
  AliasMap aliases;
  std::vector<std::pair<std::string, std::string>> atl;   // name, text
  std::vector<std::pair<std::string, std::string>> aemc;  // name, text

  // Text of a formula by name, and whether it is an AEMC formula.
  const std::string* find(std::string_view name, bool* is_aemc = nullptr) const;
};

FormulaBundle parse_bundle(std::string_view text);
std::string export_bundle(const FormulaBundle& bundle);
FormulaBundle load_bundle(const std::string& path);
void save_bundle(const FormulaBundle& bundle, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace amc
