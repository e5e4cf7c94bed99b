// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "dyadic/mset.hpp"
#include "dyadic/suites.hpp"

using namespace dyadic;
namespace fs = std::filesystem;

namespace {

// Wall-clock limits, seconds.
constexpr double kOrthogonalityLimit = 5.0;
constexpr double kClosedFormLimit = 60.0;
constexpr double kStageThreeLimit = 1.0;

constexpr std::uint64_t kSeed = 20241014;

struct Outcome {
  bool passed = true;
  std::string detail;

  void take(const CheckResult& r) {
    passed = passed && r.passed;
    detail += (detail.empty() ? "" : " | ") + r.name + ": " + r.detail;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<MSetConfig> permuted_family(int d, int S, int random_count) {
  std::vector<MSetConfig> out{MSetConfig(d, S)};
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < random_count; ++i) {
    MSetConfig cfg(d, S);
    for (int s = 2; s <= S; ++s) cfg.set_permutation(s, StagePermutation::random_product(d, cfg.m(s), rng));
    out.push_back(std::move(cfg));
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "walshlab_acceptance";
  fs::create_directories(dir);
  for (std::string mode : {"sums", "uset", "coeffs"})
    for (std::string format : {"csv", "json"}) {
      std::string files[2];
      for (int run = 0; run < 2; ++run) {
        const fs::path out = dir / (mode + "_" + std::to_string(run) + "." + format);
        const std::string cmd = std::string(WALSHLAB_PATH) + " --mode " + mode + " --format " + format +
                                " -d 2 -S 2 -K 8 --seed 99 --out " + out.string();
        if (std::system(cmd.c_str()) != 0) {
          o.passed = false;
          o.detail += mode + "/" + format + " run failed; ";
        }
        files[run] = slurp(out);
      }
      const bool same = !files[0].empty() && files[0] == files[1];
      o.passed = o.passed && same;
      o.detail += mode + "/" + format + (same ? " identical (" + std::to_string(files[0].size()) + " bytes); " : " differs; ");
    }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1,
       [] {
         Outcome o;
         const auto start = std::chrono::steady_clock::now();
         o.take(checks::walsh_matrix_orthogonality(8));
         const double t = seconds_since(start);
         o.passed = o.passed && t < kOrthogonalityLimit;
         o.detail += " in " + std::to_string(t) + " s";
         return o;
       }},
      {2, [] { Outcome o; o.take(checks::walsh_nd_orthogonality(2, 4)); return o; }},
      {3, [] { Outcome o; o.take(checks::scaling_identity({1, 2, 3}, {1, 2})); return o; }},
      {4, [] { Outcome o; o.take(checks::dirichlet_decomposition(256, 16)); return o; }},
      {5,
       [] {
         Outcome o;
         o.take(checks::additivity(2, 6, kSeed));
         o.take(checks::additivity(3, 4, kSeed));
         return o;
       }},
      {6,
       [] {
         Outcome o;
         const auto start = std::chrono::steady_clock::now();
         for (const auto& cfg : permuted_family(2, 2, 3)) o.take(checks::closed_form_coefficients(cfg, 2));
         const double t = seconds_since(start);
         o.passed = o.passed && t < kClosedFormLimit;
         o.detail += " in " + std::to_string(t) + " s";
         return o;
       }},
      {7,
       [] {
         Outcome o;
         for (const auto& cfg : permuted_family(2, 2, 3)) o.take(checks::local_closed_form(cfg, 2));
         return o;
       }},
      {8,
       [] {
         Outcome o;
         for (const auto& cfg : permuted_family(2, 2, 3)) o.take(checks::off_block_vanishing(cfg, 2));
         return o;
       }},
      {9,
       [] {
         Outcome o;
         for (const auto& cfg : permuted_family(2, 2, 1)) o.take(checks::local_vanishing_and_integral(cfg, 2));
         return o;
       }},
      {10,
       [] {
         Outcome o;
         o.take(checks::stage_measures(MSetConfig(2, 2), 2));
         o.take(checks::stage_measures(MSetConfig(3, 1), 1));
         return o;
       }},
      {11,
       [] {
         Outcome o;
         o.take(checks::halving_geometry(MSetConfig(2, 2), 2));
         o.take(checks::halving_geometry(MSetConfig(3, 2), 2));
         return o;
       }},
      {12, [] { Outcome o; o.take(checks::zero_partial_sums(MSetConfig(2, 2), 100, 4, 7, kSeed)); return o; }},
      {13,
       [] {
         Outcome o;
         for (const auto& cfg : permuted_family(2, 2, 1)) o.take(checks::magnitude_rigidity(cfg, 2));
         return o;
       }},
      {14, [] { Outcome o; o.take(checks::tail_bound_diagnostic(MSetConfig(2, 2), 100, kSeed)); return o; }},
      {15,
       [] {
         Outcome o;
         o.take(checks::factorized_vs_naive(MSetConfig(2, 2), 2, 20, kSeed));
         o.take(checks::factorized_stage_three(2, 10, kStageThreeLimit, kSeed));
         return o;
       }},
      {16,
       [] {
         Outcome o;
         o.take(checks::iterated_vs_rectangular(MSetConfig(2, 2), 10, kSeed));
         o.take(checks::iterated_vs_rectangular(MSetConfig(3, 1), 10, kSeed));
         return o;
       }},
      {17,
       [] {
         Outcome o;
         for (std::uint64_t seed = 0; seed < 4; ++seed) o.take(checks::uset_witness(MSetConfig(2, 2), 2, kSeed + seed));
         return o;
       }},
      {18, [] { Outcome o; o.take(checks::dirichlet_difference(64)); return o; }},
      {19, determinism},
  };

  bool all = true;
  for (const auto& [id, body] : criteria) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
