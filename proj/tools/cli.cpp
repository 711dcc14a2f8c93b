#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "conewave/errors.hpp"
#include "conewave/field_io.hpp"
#include "conewave/verify.hpp"
#include "conewave/version.hpp"
#include "json.hpp"

namespace conewave::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct OutputSet {
  fs::path dir;
  std::vector<std::string> files;

  fs::path add(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << "\n";
  if (!os) throw IoError("write failed for " + path.string());
}

// manifest goes last and is the only file not digested
void write_manifest(OutputSet& out, const std::string& command, json params,
                    double duration_seconds) {
  std::sort(out.files.begin(), out.files.end());
  json outputs = json::array();
  for (const std::string& f : out.files)
    outputs.push_back({{"file", f}, {"digest", file_digest_hex((out.dir / f).string())}});
  const json manifest = {{"manifest_version", 1},
                         {"tool_version", kVersion},
                         {"command", command},
                         {"params", std::move(params)},
                         {"duration_seconds", duration_seconds},
                         {"outputs", std::move(outputs)}};
  write_json(out.dir / "manifest.json", manifest);
}

json report_to_json(const StatsReport& rep) {
  json params = json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  json checks = json::array();
  for (const CheckResult& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"statistic", c.statistic},
                      {"threshold", c.threshold},
                      {"pass", c.pass}});
  return {{"test", rep.test},
          {"seed", rep.seed},
          {"params", std::move(params)},
          {"checks", std::move(checks)},
          {"pass", rep.pass}};
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) throw CLI::ValidationError(what, "expected an unsigned integer");
  return v;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CONEWAVE_SEED")) return parse_u64(env, "CONEWAVE_SEED");
  return verify::kDefaultSeed;
}

struct CommonArgs {
  std::string out_dir = ".";
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;

  std::uint64_t seed_or_default() const { return seed ? *seed : default_seed(); }
};

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--out", c.out_dir, "Output directory (created if missing)");
  cmd->add_option("--threads", c.threads, "Worker threads, 0 = hardware count");
  cmd->add_option("--seed", c.seed, "RNG seed (default: CONEWAVE_SEED or 11)");
}

OutputSet make_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
  return OutputSet{fs::path(dir), {}};
}

void write_field_file(const DiscreteField& f, OutputSet& out, const std::string& stem,
                      const std::string& format) {
  const std::size_t side = std::max(f.rows(), f.cols()) - 1;
  const bool binary = format == "binary" || (format == "auto" && side >= 512);
  if (binary)
    write_field_binary(f, (out.add(stem + ".bin")).string());
  else
    write_field_csv(f, (out.add(stem + ".csv")).string());
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  CommonArgs common;
  std::string preset, boundary_file, forcing_file;
  int d = 1;
  std::optional<int> mesh_exp;
  int window_exp = 0;
  bool renormalize = false;
  std::string format = "auto";
};

int run_solve(const SolveArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  BoundaryPair b;
  if (!a.preset.empty()) {
    if (!a.mesh_exp) throw CLI::ValidationError("--mesh-exp", "required with --preset");
    const auto [fp, fm] = preset_boundary(a.preset, a.d);
    b = boundary_from_functions(fp, fm, *a.mesh_exp, a.window_exp);
  } else {
    b = read_boundary_csv(a.boundary_file);
  }

  ForcingGrid forcing;
  SolveOptions opts;
  if (!a.forcing_file.empty()) {
    forcing = read_forcing_csv(a.forcing_file);
    opts.forcing = &forcing;
  }
  opts.renormalize = a.renormalize;
  ThreadPool pool(a.common.threads);
  opts.pool = &pool;

  const DiscreteField f = solve(b, opts);
  const ConservationReport cons = conservation_report(f);

  OutputSet out = make_out(a.common.out_dir);
  write_field_file(f, out, "field", a.format);
  write_json(out.add("conservation.json"), json{{"max_dm_dev", cons.max_dm_dev},
                                                {"max_dn_dev", cons.max_dn_dev},
                                                {"max_norm_drift", cons.max_norm_drift}});

  json params = {{"d", static_cast<int>(b.ambient_dim()) - 1},
                 {"steps_m", b.steps_plus()},
                 {"steps_n", b.steps_minus()},
                 {"window_exp", a.window_exp},
                 {"renormalize", a.renormalize},
                 {"format", a.format}};
  if (!a.preset.empty()) params["preset"] = a.preset;
  if (!a.boundary_file.empty()) params["boundary_file"] = a.boundary_file;
  if (!a.forcing_file.empty()) params["forcing_file"] = a.forcing_file;
  if (a.mesh_exp) {
    params["mesh_exp"] = *a.mesh_exp;
    params["t"] = std::ldexp(1.0, -*a.mesh_exp);
  }
  write_manifest(out, "solve", std::move(params), elapsed_since(t0));
  return 0;
}

// ---- sample ---------------------------------------------------------------

struct SampleArgs {
  CommonArgs common;
  int d = 1;
  int mesh_exp = 6;
  int window_exp = 0;
  std::size_t replicas = 1;
  std::string method = "auto";
  int substeps = 64;
  std::string emit = "boundary";
  std::string format = "auto";
};

int run_sample(const SampleArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = a.common.seed_or_default();

  std::optional<SamplerMethod> method;
  if (a.method == "exact-wrap") method = SamplerMethod::kExactWrap;
  else if (a.method == "geodesic-walk") method = SamplerMethod::kGeodesicWalk;
  else if (a.method != "auto") throw CLI::ValidationError("--method", "unknown method " + a.method);

  const bool emit_boundary = a.emit == "boundary" || a.emit == "both";
  const bool emit_field = a.emit == "field" || a.emit == "both";
  if (!emit_boundary && !emit_field)
    throw CLI::ValidationError("--emit", "expected boundary, field, or both");

  OutputSet out = make_out(a.common.out_dir);
  ThreadPool pool(a.common.threads);

  // stream id for replica r is seed XOR r; driven through the pool with one
  // slot of output files per replica, so thread count cannot change anything
  std::vector<std::vector<std::string>> names(a.replicas);
  auto replica_name = [](const char* stem, std::size_t r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%03zu", stem, r);
    return std::string(buf);
  };
  auto body = [&](std::size_t r) {
    RngStream rng(seed, seed ^ r);
    const BoundaryPair b =
        sample_brownian_boundary(a.mesh_exp, a.window_exp, a.d, rng, method, a.substeps);
    if (emit_boundary) {
      const std::string name = replica_name("boundary", r) + ".csv";
      write_boundary_csv(b, (out.dir / name).string());
      names[r].push_back(name);
    }
    if (emit_field) {
      const DiscreteField f = solve(b);
      const std::size_t side = std::max(f.rows(), f.cols()) - 1;
      const bool binary = a.format == "binary" || (a.format == "auto" && side >= 512);
      const std::string name = replica_name("field", r) + (binary ? ".bin" : ".csv");
      if (binary)
        write_field_binary(f, (out.dir / name).string());
      else
        write_field_csv(f, (out.dir / name).string());
      names[r].push_back(name);
    }
  };
  if (a.replicas > 0 && pool.size() > 1)
    pool.parallel_for(a.replicas, body);
  else
    for (std::size_t r = 0; r < a.replicas; ++r) body(r);
  for (auto& per_replica : names)
    for (auto& n : per_replica) out.files.push_back(std::move(n));

  json stream_ids = json::array();
  for (std::size_t r = 0; r < a.replicas; ++r) stream_ids.push_back(seed ^ r);
  const char* method_name = method ? (*method == SamplerMethod::kExactWrap ? "exact-wrap"
                                                                           : "geodesic-walk")
                                   : (a.d == 1 ? "exact-wrap" : "geodesic-walk");
  json params = {{"d", a.d},
                 {"mesh_exp", a.mesh_exp},
                 {"window_exp", a.window_exp},
                 {"t", std::ldexp(1.0, -a.mesh_exp)},
                 {"replicas", a.replicas},
                 {"seed", seed},
                 {"stream_ids", std::move(stream_ids)},
                 {"method", method_name},
                 {"substeps", a.substeps},
                 {"emit", a.emit}};
  write_manifest(out, "sample", std::move(params), elapsed_since(t0));
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  CommonArgs common;
  std::string suite;
  std::optional<int> d, mesh_exp, window_exp;
  std::optional<std::size_t> replicas;
  std::string corrupt;
};

Corruption parse_corruption(const std::string& s) {
  if (s.empty()) return Corruption::kNone;
  if (s == "identity-step") return Corruption::kIdentityStep;
  if (s == "nonstationary-boundary") return Corruption::kNonstationaryBoundary;
  throw CLI::ValidationError("--corrupt", "unknown corruption " + s);
}

void write_rows_csv(const fs::path& path, const char* header,
                    const std::vector<std::pair<double, double>>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << header << "\n";
  char buf[80];
  for (const auto& [a, b] : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", a, b);
    os << buf << "\n";
  }
  if (!os) throw IoError("write failed for " + path.string());
}

int run_verify(const VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = a.common.seed_or_default();
  const Corruption corruption = parse_corruption(a.corrupt);
  const bool corruptible = a.suite == "chain-invariance" || a.suite == "translation" ||
                           a.suite == "all";
  if (corruption != Corruption::kNone && !corruptible)
    throw CLI::ValidationError("--corrupt", "not applicable to suite " + a.suite);

  ThreadPool pool(a.common.threads);
  OutputSet out = make_out(a.common.out_dir);

  TailCurve curve;
  std::vector<ConvergenceRow> conv_d1, conv_d2;
  bool have_curve = false, have_conv = false;

  auto run_one = [&](const std::string& suite) -> StatsReport {
    if (suite == "identities") return verify::identities(100000, seed);
    if (suite == "conservation") return verify::conservation(seed);
    if (suite == "oracle-d1")
      return verify::oracle_d1(a.replicas.value_or(100), a.mesh_exp.value_or(6),
                               a.window_exp.value_or(0), seed, &pool);
    if (suite == "chain-invariance")
      return verify::chain_invariance(a.replicas.value_or(500), a.mesh_exp.value_or(6),
                                      a.window_exp.value_or(0), a.d.value_or(1), seed,
                                      corruption, &pool);
    if (suite == "translation")
      return verify::translation(a.replicas.value_or(1000), a.mesh_exp.value_or(6),
                                 a.window_exp.value_or(0), a.d.value_or(1), seed, corruption,
                                 &pool);
    if (suite == "kernel-identity") return verify::kernel_identity(seed);
    if (suite == "modulus") {
      have_curve = true;
      return verify::modulus(a.replicas.value_or(200), a.mesh_exp.value_or(8), seed, &pool,
                             &curve);
    }
    if (suite == "converge") {
      have_conv = true;
      return verify::converge(&pool, &conv_d1, &conv_d2);
    }
    if (suite == "perturb") return verify::perturb(&pool);
    throw CLI::ValidationError("suite", "unknown suite " + suite);
  };

  std::vector<StatsReport> reports;
  if (a.suite == "all") {
    for (const char* s : {"identities", "conservation", "oracle-d1", "chain-invariance",
                          "translation", "kernel-identity", "modulus", "converge", "perturb"})
      reports.push_back(run_one(s));
  } else {
    reports.push_back(run_one(a.suite));
  }

  json report_json;
  if (reports.size() == 1) {
    report_json = report_to_json(reports[0]);
  } else {
    report_json = json::array();
    for (const StatsReport& r : reports) report_json.push_back(report_to_json(r));
  }
  write_json(out.add("report.json"), report_json);

  if (have_curve) {
    std::vector<std::pair<double, double>> rows;
    for (std::size_t i = 0; i < curve.a_grid.size(); ++i)
      rows.emplace_back(curve.a_grid[i], curve.probability[i]);
    write_rows_csv(out.add("tail_curve.csv"), "A,probability", rows);
  }
  if (have_conv) {
    for (const auto& [name, rows] : {std::pair{"error_table_d1.csv", &conv_d1},
                                     std::pair{"error_table_d2.csv", &conv_d2}}) {
      std::vector<std::pair<double, double>> out_rows;
      for (const ConvergenceRow& r : *rows)
        out_rows.emplace_back(static_cast<double>(r.mesh_exp), r.sup_err);
      write_rows_csv(out.add(name), "N,sup_error", out_rows);
    }
  }

  bool all_pass = true;
  for (const StatsReport& r : reports) all_pass = all_pass && r.pass;

  json params = {{"suite", a.suite}, {"seed", seed}};
  if (a.d) params["d"] = *a.d;
  if (a.mesh_exp) params["mesh_exp"] = *a.mesh_exp;
  if (a.window_exp) params["window_exp"] = *a.window_exp;
  if (a.replicas) params["replicas"] = *a.replicas;
  if (!a.corrupt.empty()) params["corrupt"] = a.corrupt;
  write_manifest(out, "verify", std::move(params), elapsed_since(t0));

  for (const StatsReport& r : reports) {
    std::printf("suite %-16s %s\n", r.test.c_str(), r.pass ? "pass" : "FAIL");
    if (!r.pass)
      for (const CheckResult& c : r.checks)
        if (!c.pass)
          std::printf("  check %-28s statistic %.6g threshold %.6g\n", c.name.c_str(),
                      c.statistic, c.threshold);
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"discrete wave maps on the light cone: solver, sampler, verifier"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one field from a boundary pair");
  add_common(solve_cmd, sa.common);
  auto* preset_opt = solve_cmd->add_option("--preset", sa.preset,
                                           "Boundary preset: constant, circle-sin, "
                                           "great-circle-precession");
  auto* bfile_opt =
      solve_cmd->add_option("--boundary", sa.boundary_file, "Boundary CSV file");
  preset_opt->excludes(bfile_opt);
  solve_cmd->add_option("--d", sa.d, "Sphere dimension (preset mode)");
  solve_cmd->add_option("--mesh-exp", sa.mesh_exp, "Mesh exponent N, spacing 2^-N");
  solve_cmd->add_option("--window-exp", sa.window_exp, "Window exponent L, side 2^(N+L)");
  solve_cmd->add_option("--forcing", sa.forcing_file, "Forcing grid CSV");
  solve_cmd->add_flag("--renormalize", sa.renormalize, "Project each cell back to the sphere");
  solve_cmd->add_option("--format", sa.format, "Field format: csv, binary, auto")
      ->check(CLI::IsMember({"csv", "binary", "auto"}));

  SampleArgs ma;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Sample Brownian boundary replicas (and fields)");
  add_common(sample_cmd, ma.common);
  sample_cmd->add_option("--d", ma.d, "Sphere dimension");
  sample_cmd->add_option("--mesh-exp", ma.mesh_exp, "Mesh exponent N");
  sample_cmd->add_option("--window-exp", ma.window_exp, "Window exponent L");
  sample_cmd->add_option("--replicas", ma.replicas, "Replica count");
  sample_cmd->add_option("--method", ma.method, "Sampler: exact-wrap, geodesic-walk, auto");
  sample_cmd->add_option("--substeps", ma.substeps, "Geodesic walk substeps");
  sample_cmd->add_option("--emit", ma.emit, "Outputs per replica: boundary, field, both")
      ->check(CLI::IsMember({"boundary", "field", "both"}));
  sample_cmd->add_option("--format", ma.format, "Field format: csv, binary, auto")
      ->check(CLI::IsMember({"csv", "binary", "auto"}));

  VerifyArgs va;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  add_common(verify_cmd, va.common);
  verify_cmd
      ->add_option("suite", va.suite,
                   "identities, conservation, oracle-d1, chain-invariance, translation, "
                   "modulus, kernel-identity, converge, perturb, all")
      ->required()
      ->check(CLI::IsMember({"identities", "conservation", "oracle-d1", "chain-invariance",
                             "translation", "modulus", "kernel-identity", "converge",
                             "perturb", "all"}));
  verify_cmd->add_option("--d", va.d, "Sphere dimension override");
  verify_cmd->add_option("--mesh-exp", va.mesh_exp, "Mesh exponent override");
  verify_cmd->add_option("--window-exp", va.window_exp, "Window exponent override");
  verify_cmd->add_option("--replicas", va.replicas, "Replica count override");
  verify_cmd->add_option("--corrupt", va.corrupt,
                         "Negative control: identity-step or nonstationary-boundary");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("conewave");
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (solve_cmd->parsed()) {
      if (sa.preset.empty() && sa.boundary_file.empty())
        throw CLI::ValidationError("solve", "one of --preset / --boundary is required");
      return run_solve(sa);
    }
    if (sample_cmd->parsed()) return run_sample(ma);
    return run_verify(va);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 4;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid arguments: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "invalid arguments: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace conewave::cli
