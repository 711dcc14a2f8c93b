// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances and budgets are pinned here on purpose; loosen nothing silently.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "conewave/analysis.hpp"
#include "conewave/field_io.hpp"
#include "conewave/parallel.hpp"
#include "conewave/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using conewave::StatsReport;
using nlohmann::json;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

/// The check closest to (or past) its threshold, as "name stat vs thr".
std::string binding_check(const StatsReport& rep) {
  double worst = -1.0;
  const conewave::CheckResult* pick = nullptr;
  for (const auto& c : rep.checks) {
    const double ratio = c.threshold > 0.0
                             ? c.statistic / c.threshold
                             : (c.statistic <= c.threshold ? 0.0 : 2.0);
    if (!c.pass || ratio > worst) {
      worst = c.pass ? ratio : 1e300;
      pick = &c;
    }
  }
  if (!pick) return "no checks";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %.3g vs %.3g", pick->name.c_str(), pick->statistic,
                pick->threshold);
  return buf;
}

struct Gate {
  int failures = 0;
  int index = 0;

  void report(const char* name, bool pass, const std::string& detail, double secs,
              double budget) {
    ++index;
    const bool in_budget = secs <= budget;
    const bool ok = pass && in_budget;
    std::printf("[%s] %2d %-24s %s; %.1fs of %.0fs%s\n", ok ? "PASS" : "FAIL", index, name,
                detail.c_str(), secs, budget, in_budget ? "" : " (over budget)");
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  void suite(const char* name, const StatsReport& rep, double secs, double budget) {
    report(name, rep.pass, binding_check(rep), secs, budget);
  }
};

std::string fresh_dir(const std::string& leaf) {
  const fs::path p = fs::temp_directory_path() / "conewave_acceptance" / leaf;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

json manifest_without_duration(const std::string& dir) {
  std::ifstream is(dir + "/manifest.json");
  json m = json::parse(is);
  m.erase("duration_seconds");
  return m;
}

/// Bitwise comparison of every regular file except the manifest, which is
/// compared structurally with its wall-clock field removed.
bool dirs_reproduce(const std::string& a, const std::string& b, std::string& why) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  std::size_t b_count = 0;
  for (const auto& e : fs::directory_iterator(b)) {
    ++b_count;
    (void)e;
  }
  if (b_count != names.size()) {
    why = "file counts differ";
    return false;
  }
  for (const std::string& n : names) {
    if (!fs::exists(fs::path(b) / n)) {
      why = n + " missing";
      return false;
    }
    if (n == "manifest.json") continue;
    if (conewave::file_digest_hex(a + "/" + n) != conewave::file_digest_hex(b + "/" + n)) {
      why = n + " differs";
      return false;
    }
  }
  if (manifest_without_duration(a) != manifest_without_duration(b)) {
    why = "manifests differ beyond duration";
    return false;
  }
  return true;
}

bool reproducibility_criterion(std::string& detail) {
  using conewave::cli::run_cli;
  const std::string s1 = fresh_dir("sample_t1"), s8 = fresh_dir("sample_t8");
  const std::vector<std::string> sample = {"sample", "--d",        "2",      "--mesh-exp",
                                           "5",      "--replicas", "6",      "--seed",
                                           "7",      "--emit",     "both"};
  auto with = [](std::vector<std::string> v, std::initializer_list<const char*> extra) {
    for (const char* e : extra) v.emplace_back(e);
    return v;
  };
  if (run_cli(with(sample, {"--threads", "1", "--out", s1.c_str()})) != 0 ||
      run_cli(with(sample, {"--threads", "8", "--out", s8.c_str()})) != 0) {
    detail = "sample run failed";
    return false;
  }
  std::string why;
  if (!dirs_reproduce(s1, s8, why)) {
    detail = "sample: " + why;
    return false;
  }

  const std::string v1 = fresh_dir("verify_t1"), v8 = fresh_dir("verify_t8");
  const std::vector<std::string> ver = {"verify", "chain-invariance", "--seed", "11"};
  if (run_cli(with(ver, {"--threads", "1", "--out", v1.c_str()})) != 0 ||
      run_cli(with(ver, {"--threads", "8", "--out", v8.c_str()})) != 0) {
    detail = "verify run failed";
    return false;
  }
  if (!dirs_reproduce(v1, v8, why)) {
    detail = "verify: " + why;
    return false;
  }
  detail = "sample and verify outputs bitwise stable across threads {1,8}";
  return true;
}

}  // namespace

int main() {
  namespace verify = conewave::verify;
  const std::uint64_t seed = verify::kDefaultSeed;
  conewave::ThreadPool pool;
  Gate gate;

  const auto timed = [&](const char* name, double budget, auto&& run) {
    const double t0 = now_seconds();
    const StatsReport rep = run();
    gate.suite(name, rep, now_seconds() - t0, budget);
  };

  timed("reflection-identities", 5, [&] { return verify::identities(100000, seed); });
  timed("conservation", 30, [&] { return verify::conservation(seed); });
  timed("d1-oracle", 10, [&] { return verify::oracle_d1(100, 6, 0, seed, &pool); });
  timed("chain-invariance", 60, [&] {
    return verify::chain_invariance(500, 6, 0, 1, seed, conewave::Corruption::kNone, &pool);
  });
  timed("translation-invariance", 60, [&] {
    return verify::translation(1000, 6, 0, 1, seed, conewave::Corruption::kNone, &pool);
  });
  timed("kernel-identity", 30, [&] { return verify::kernel_identity(seed); });
  timed("step-tail", 30, [&] { return verify::step_tail(seed); });
  timed("modulus-envelope", 300, [&] { return verify::modulus(200, 8, seed, &pool); });
  timed("convergence", 300, [&] { return verify::converge(&pool); });
  timed("perturbation", 60, [&] { return verify::perturb(&pool); });

  const double t0 = now_seconds();
  std::string detail;
  const bool repro = reproducibility_criterion(detail);
  gate.report("reproducibility", repro, detail, now_seconds() - t0, 60);

  std::printf("acceptance: %d/11 criteria pass\n", 11 - gate.failures);
  return gate.failures;
}
