#include "dyadic/io.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dyadic {

using nlohmann::ordered_json;

void RecordTable::add(std::vector<ordered_json> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("record has the wrong number of cells");
  rows.push_back(std::move(row));
}

namespace {

std::string render_cell(const ordered_json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? std::string() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string to_csv(const RecordTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + render_cell(table.columns[i]);
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + render_cell(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const ordered_json& config, const RecordTable& table) {
  ordered_json doc;
  doc["config"] = config;
  doc["records"] = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json record = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) record[table.columns[i]] = row[i];
    doc["records"].push_back(std::move(record));
  }
  return doc.dump(2) + "\n";
}

ordered_json bigint_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(value);
  return value.str();
}

std::string cube_label(const DyadicCube& c) {
  std::string s = std::to_string(c.rank) + ":";
  for (int j = 0; j < c.dimension(); ++j) s += (j ? "," : "") + c.index[j].str();
  return s;
}

std::string digit_string(const DyadicPoint& g, int j) {
  std::string s;
  for (int t = 0; t < g.depth(); ++t) s += g.bit(j, t) ? '1' : '0';
  return s;
}

void apply_permutation_json(const std::string& text, MSetConfig& cfg) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("permutation file is not valid JSON: ") + e.what());
  }
  const ordered_json entries = doc.is_object() && doc.contains("permutations") ? doc["permutations"] : doc;
  if (!entries.is_array()) throw std::invalid_argument("permutation file must hold an array of entries");

  std::map<int, std::vector<std::vector<std::uint64_t>>> product;
  std::map<int, std::vector<std::uint64_t>> general;
  for (const auto& e : entries) {
    if (!e.is_object() || !e.contains("stage") || !e.contains("perm"))
      throw std::invalid_argument("permutation entry needs stage and perm");
    const int s = e["stage"].get<int>();
    if (s < 1 || s > cfg.stages) throw std::invalid_argument("permutation stage outside 1..S: " + std::to_string(s));
    std::vector<std::uint64_t> perm;
    for (const auto& x : e["perm"]) {
      if (!x.is_number_integer() || x.get<long long>() < 0) throw std::invalid_argument("perm entries must be nonnegative integers");
      perm.push_back(x.get<std::uint64_t>());
    }
    if (e.value("general", false)) {
      if (general.count(s) || product.count(s)) throw std::invalid_argument("stage given twice in permutation file");
      general[s] = std::move(perm);
      continue;
    }
    if (!e.contains("coordinate")) throw std::invalid_argument("permutation entry needs a coordinate");
    const int j = e["coordinate"].get<int>();
    if (j < 1 || j > cfg.dimension) throw std::invalid_argument("permutation coordinate outside 1..d");
    if (general.count(s)) throw std::invalid_argument("stage given twice in permutation file");
    auto& arrays = product[s];
    if (arrays.empty()) arrays.assign(cfg.dimension, {});
    if (!arrays[j - 1].empty()) throw std::invalid_argument("coordinate given twice for one stage");
    arrays[j - 1] = std::move(perm);
  }
  for (auto& [s, arrays] : product) {
    const std::size_t size = std::size_t{1} << cfg.m(s);
    for (auto& a : arrays)
      if (a.empty()) {
        a.resize(size);
        std::iota(a.begin(), a.end(), std::uint64_t{0});
      }
    cfg.set_permutation(s, StagePermutation::product(cfg.m(s), std::move(arrays)));
  }
  for (auto& [s, flat] : general) cfg.set_permutation(s, StagePermutation::general(cfg.dimension, cfg.m(s), std::move(flat)));
}

void apply_permutation_file(const std::string& path, MSetConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open permutation file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_permutation_json(buffer.str(), cfg);
}

}  // namespace dyadic
