#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dyadic/group.hpp"
#include "dyadic/mset.hpp"

namespace dyadic {

/// Rows of JSON scalars under named columns; rendered as CSV or JSON.
struct RecordTable {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;

  void add(std::vector<nlohmann::ordered_json> row);
};

/// Header row, comma separated, LF line endings; cells quoted when needed.
std::string to_csv(const RecordTable& table);
/// {"config": ..., "records": [{column: value, ...}, ...]}.
std::string to_json(const nlohmann::ordered_json& config, const RecordTable& table);

/// Integer JSON value when it fits in int64, decimal string otherwise.
nlohmann::ordered_json bigint_json(const BigInt& value);

/// "k:m1,m2,..."
std::string cube_label(const DyadicCube& c);
/// Digits of a point coordinate as a 0/1 string.
std::string digit_string(const DyadicPoint& g, int j);

/// Installs permutations from JSON text into cfg. Accepts a top-level array
/// or {"permutations": [...]}; entries are {stage, coordinate, perm} with
/// 1-based stage and coordinate. Coordinates left out stay identity.
/// An entry {stage, general: true, perm} gives a general permutation of
/// flattened multi-indices (needs cfg.allow_general).
void apply_permutation_json(const std::string& text, MSetConfig& cfg);
void apply_permutation_file(const std::string& path, MSetConfig& cfg);

}  // namespace dyadic
