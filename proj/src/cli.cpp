#include "dyadic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dyadic/convergence.hpp"
#include "dyadic/io.hpp"
#include "dyadic/suites.hpp"
#include "dyadic/uset.hpp"

namespace dyadic::cli {

using nlohmann::ordered_json;

namespace {

// Beyond this the stage ranks grow past anything a batch run can enumerate.
constexpr int kMaxCliStages = 6;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ordered_json config_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["dimension"] = cfg.dimension;
  j["depth"] = cfg.depth;
  j["stages"] = cfg.stages;
  j["perm_file"] = cfg.perm_file ? ordered_json(*cfg.perm_file) : ordered_json(nullptr);
  j["mode"] = cfg.mode;
  j["format"] = cfg.format;
  j["seed"] = cfg.seed;
  j["allow_d1"] = cfg.allow_d1;
  return j;
}

void push_value(std::vector<ordered_json>& row, const DyadicRational& v) {
  row.push_back(bigint_json(v.mantissa()));
  row.push_back(v.exponent());
}

std::vector<std::string> coordinate_columns(const std::string& prefix, int d) {
  std::vector<std::string> cols;
  for (int j = 1; j <= d; ++j) cols.push_back(prefix + std::to_string(j));
  return cols;
}

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

MSetConfig build_mset(const ExperimentConfig& cfg) {
  MSetConfig m(cfg.dimension, cfg.stages);
  if (cfg.perm_file) {
    m.allow_general = true;
    try {
      apply_permutation_file(*cfg.perm_file, m);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  return m;
}

void validate(const ExperimentConfig& cfg) {
  static const std::set<std::string> modes{"verify", "coeffs", "sums", "sets", "uset"};
  if (!modes.count(cfg.mode)) throw ConfigError("unknown mode: " + cfg.mode);
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("unknown format: " + cfg.format);
  if (cfg.dimension < 1) throw ConfigError("dimension must be positive");
  if (cfg.dimension == 1 && !cfg.allow_d1) throw ConfigError("d = 1 needs --allow-d1");
  if (cfg.dimension == 1 && cfg.mode != "verify") throw ConfigError("d = 1 supports verify mode only");
  if (cfg.stages < 1 || cfg.stages > kMaxCliStages)
    throw ConfigError("stages must lie in 1.." + std::to_string(kMaxCliStages));
  const int need = 2 * StageSequence(cfg.stages).m(cfg.stages) + 1;
  if (cfg.depth < need) throw ConfigError("depth K must be at least 2 m_S + 1 = " + std::to_string(need));
}

RecordTable verify_table(const MSetConfig& m, const ExperimentConfig& cfg, bool& all_passed) {
  RecordTable t{{"suite", "result", "detail"}, {}};
  all_passed = true;
  for (const auto& r : run_verify_suites(m, cfg.depth, cfg.seed)) {
    all_passed = all_passed && r.passed;
    t.add({r.name, r.passed ? "pass" : "fail", r.detail});
  }
  return t;
}

RecordTable coeffs_table(const MSetConfig& m, bool& all_equal) {
  const int d = m.dimension;
  const int mS = m.m(m.stages);
  const int k = 2 * mS + 1;
  if (d * k > 12) throw ConfigError("coeffs mode brute force needs d (2 m_S + 1) <= 12");
  RecordTable t{concat({coordinate_columns("n", d),
                        {"closed_mantissa", "closed_exp", "brute_mantissa", "brute_exp", "equal"}}),
                {}};
  const Quasimeasure tau = mset_quasimeasure(m);
  const BigInt lo = BigInt(1) << (2 * mS);
  all_equal = true;
  for_each_index(std::vector<BigInt>(d, lo), std::vector<BigInt>(d, lo << 1), [&](const WalshIndex& n) {
    const DyadicRational closed = closed_form_coefficient(n, m);
    const DyadicRational brute = fourier_coefficient(tau, n, k);
    std::vector<ordered_json> row;
    for (const auto& x : n.n) row.push_back(bigint_json(x));
    push_value(row, closed);
    push_value(row, brute);
    row.push_back(closed == brute);
    all_equal = all_equal && closed == brute;
    t.add(std::move(row));
  });
  return t;
}

RecordTable sets_table(const MSetConfig& m) {
  const int d = m.dimension;
  const int S = m.stages;
  const int rank = 2 * m.m(S) + 1;
  if (static_cast<long>(d) * rank > 20) throw ConfigError("sets mode enumeration needs d (2 m_S + 1) <= 20");
  RecordTable t{concat({{"record", "rank"}, coordinate_columns("m", d), {"measure_mantissa", "measure_exponent", "measure"}}),
                {}};
  DyadicRational total;
  for_each_cube(d, rank, [&](const DyadicCube& c) {
    if (!cube_in_F_tilde(c, S, m)) return;
    std::vector<ordered_json> row{"cube", rank};
    for (const auto& x : c.index) row.push_back(bigint_json(x));
    const DyadicRational mu = measure(c);
    total += mu;
    push_value(row, mu);
    row.push_back(mu.to_fraction_string());
    t.add(std::move(row));
  });
  if (total != mu_F_tilde(S, m)) throw std::logic_error("cube enumeration disagrees with mu F~_S");
  std::vector<ordered_json> row{"total", rank};
  for (int j = 0; j < d; ++j) row.push_back(nullptr);
  push_value(row, total);
  row.push_back(total.to_fraction_string());
  t.add(std::move(row));
  return t;
}

RecordTable sums_table(const MSetConfig& m, const ExperimentConfig& cfg) {
  const int d = m.dimension;
  const int S = m.stages;
  const bool product = m.all_product_form();
  const bool enumerable = d * 2 * m.m(S) <= 12;
  if (!product && !enumerable) throw ConfigError("general permutations need an enumerable top block for sums mode");
  const CoefficientOracle coeffs = mset_coefficients(m);
  auto sum = [&](const WalshIndex& N, const DyadicPoint& g) {
    return product ? factorized_partial_sum(m, N, g) : block_partial_sum(coeffs, N, g);
  };

  // Truncation values: start, first row and end of every block.
  std::set<BigInt> levels{1};
  for (int s = 1; s <= S; ++s) {
    const BigInt lo = BigInt(1) << (2 * m.m(s));
    levels.insert(lo);
    levels.insert(lo + (BigInt(1) << m.m(s)));
    levels.insert(lo << 1);
  }
  const std::vector<BigInt> L(levels.begin(), levels.end());
  const BigInt top = L.back();

  std::mt19937_64 rng(cfg.seed);
  std::vector<DyadicPoint> points{DyadicPoint::zero(d, cfg.depth)};
  for (int i = 0; i < 3; ++i) points.push_back(DyadicPoint::random(d, cfg.depth, rng));

  RecordTable t{concat({{"point", "mode", "lambda", "order"}, coordinate_columns("n", d),
                        {"stage", "value_mantissa", "value_exponent", "value_decimal"}}),
                {}};
  auto emit = [&](std::size_t point, const ConvergenceRecord& r) {
    std::vector<ordered_json> row{point, r.mode_tag(), r.mode == SumMode::Lambda ? ordered_json(2) : ordered_json(nullptr)};
    std::string order;
    for (int j : r.order) order += (order.empty() ? "" : ",") + std::to_string(j);
    row.push_back(order);
    for (const auto& x : r.N.n) row.push_back(bigint_json(x));
    row.push_back(r.stage ? ordered_json(*r.stage) : ordered_json(nullptr));
    push_value(row, r.value);
    row.push_back(r.value.to_decimal_string());
    t.add(std::move(row));
  };

  for (std::size_t p = 0; p < points.size(); ++p) {
    const DyadicPoint& g = points[p];
    // Rectangular sweep over the level grid.
    std::vector<std::size_t> pos(d, 0);
    for (bool more = true; more;) {
      std::vector<BigInt> n(d);
      for (int j = 0; j < d; ++j) n[j] = L[pos[j]];
      ConvergenceRecord r{WalshIndex(n), SumMode::Rectangular, 1, {}, {}, {}};
      r.value = sum(r.N, g);
      r.stage = block_stage_of(r.N);
      emit(p, r);
      int j = d - 1;
      while (j >= 0 && ++pos[j] == L.size()) pos[j--] = 0;
      more = j >= 0;
    }
    for (const auto& x : L) {
      ConvergenceRecord r{WalshIndex(std::vector<BigInt>(d, x)), SumMode::Cubic, 1, {}, {}, {}};
      r.value = sum(r.N, g);
      r.stage = block_stage_of(r.N);
      emit(p, r);
    }
    // lambda = 2 fan: one coordinate doubled off the diagonal.
    for (const auto& x : L)
      for (int j = 0; j < d; ++j) {
        std::vector<BigInt> n(d, x);
        n[j] = std::min<BigInt>(x * 2, top);
        ConvergenceRecord r{WalshIndex(n), SumMode::Lambda, 2, {}, {}, {}};
        if (!lambda_admissible(r.N, r.lambda)) continue;
        r.value = sum(r.N, g);
        r.stage = block_stage_of(r.N);
        emit(p, r);
      }
    if (enumerable) {
      std::vector<int> order(d);
      std::iota(order.begin(), order.end(), 1);
      do {
        for (const auto& x : L) {
          std::vector<BigInt> n(d, top);
          n[order[0] - 1] = x;
          ConvergenceRecord r{WalshIndex(n), SumMode::Iterated, 1, order, {}, {}};
          r.value = iterated_partial_sum(coeffs, order, x, g);
          r.stage = block_stage_of(r.N);
          emit(p, r);
        }
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  return t;
}

RecordTable uset_table(const MSetConfig& m, const ExperimentConfig& cfg, bool& ok) {
  const int d = m.dimension;
  const int max_stage = std::min(m.stages, 2);
  if (static_cast<long>(d) * (2 * m.m(max_stage) + 1) > 16) throw ConfigError("uset mode needs d (2 m_2 + 1) <= 16");
  std::mt19937_64 rng(cfg.seed);
  std::vector<WalshIndex> base;
  for (int s = 1; s <= max_stage; ++s) {
    std::vector<BigInt> b(d);
    for (auto& x : b) x = BigInt(rng() % (std::uint64_t{1} << m.m(s)));
    base.emplace_back(b);
  }
  const IndexSequence seq = symmetric_index_sequence(m, base);
  const UContradictionReport report = u2_contradiction_demo(m, seq, max_stage, 2);
  ok = report.ok;
  RecordTable t{{"construction", "stage", "cube", "integral_value_mantissa", "integral_value_exponent", "tau_mantissa",
                 "tau_exponent", "ok"},
                {}};
  for (const auto& r : report.records) {
    std::vector<ordered_json> row{r.construction, r.stage, cube_label(r.cube)};
    push_value(row, r.integral);
    push_value(row, r.tau_value);
    row.push_back(r.ok);
    t.add(std::move(row));
  }
  return t;
}

}  // namespace

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  RecordTable table;
  bool passed = true;
  try {
    validate(cfg);
    const MSetConfig m = build_mset(cfg);
    if (cfg.mode == "verify") table = verify_table(m, cfg, passed);
    else if (cfg.mode == "coeffs") table = coeffs_table(m, passed);
    else if (cfg.mode == "sets") table = sets_table(m);
    else if (cfg.mode == "sums") table = sums_table(m, cfg);
    else table = uset_table(m, cfg, passed);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << "\n";
    return kExitSuiteFailure;
  }

  const std::string text = cfg.format == "json" ? to_json(config_json(cfg), table) : to_csv(table);
  if (cfg.out) {
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file) {
      err << "cannot write " << *cfg.out << "\n";
      return kExitInvalidConfig;
    }
    file << text;
  } else {
    out << text;
  }
  if (!passed) err << cfg.mode << ": failures recorded in the output\n";
  return passed ? kExitOk : kExitSuiteFailure;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments with d-dimensional Walsh series on the dyadic group"};
  ExperimentConfig cfg;
  std::string perm_file, out_path;
  app.add_option("-d,--dimension", cfg.dimension, "Dimension d (>= 2 unless --allow-d1)");
  app.add_option("-K,--depth", cfg.depth, "Point depth K, at least 2 m_S + 1");
  app.add_option("-S,--stages", cfg.stages, "Number of construction stages");
  app.add_option("--perm-file", perm_file, "JSON permutation spec");
  app.add_option("--mode", cfg.mode, "verify | coeffs | sums | sets | uset")
      ->check(CLI::IsMember({"verify", "coeffs", "sums", "sets", "uset"}));
  app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--out", out_path, "Output path (default stdout)");
  app.add_option("--seed", cfg.seed, "Seed for sampled points");
  app.add_flag("--allow-d1", cfg.allow_d1, "Permit d = 1 for kernel checks");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidConfig;
  }
  if (!perm_file.empty()) cfg.perm_file = perm_file;
  if (!out_path.empty()) cfg.out = out_path;
  return run(cfg, out, err);
}

}  // namespace dyadic::cli
