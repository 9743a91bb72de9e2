// convidx: run operator sequences at a jump, compare their cluster spectrum
// with the predicted one, and evaluate the special functions involved.
//
// Exit codes: 0 pass, 1 comparison failed, 2 configuration error,
// 3 numeric precondition failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "convidx/descriptor.hpp"
#include "convidx/errors.hpp"
#include "convidx/harness.hpp"
#include "convidx/specfun.hpp"

namespace {

using namespace convidx;
using harness::ExperimentConfig;

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kPrecondition = 3 };

struct Flags {
  std::string config;
  std::string op;
  double s = 0.0;
  std::int64_t theta_num = 0, theta_den = 0, x0_num = 0, x0_den = 0;
  double location = 0.0;
  bool irrational = false;
  std::string fn;
  std::size_t jump = 0;
  std::size_t n_max = 0;
  std::size_t stride = 0;
  std::string format;
  std::string out;
  double d = 0.0;
  unsigned threads = 0;
  double value_tol = 0.0, index_tol = 0.0, ks_tol = 0.0;
};

void add_experiment_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON config file; flags override its values");
  cmd.add_option("--operator", f.op, "lagrange | shepard")
      ->check(CLI::IsMember({"lagrange", "shepard"}));
  cmd.add_option("--s", f.s, "Shepard exponent in [1, 20]");
  cmd.add_option("--theta-num", f.theta_num, "jump at cos(pi*num/den): numerator");
  cmd.add_option("--theta-den", f.theta_den, "jump at cos(pi*num/den): denominator");
  cmd.add_option("--x0-num", f.x0_num, "jump at x0 = num/den: numerator");
  cmd.add_option("--x0-den", f.x0_den, "jump at x0 = num/den: denominator");
  cmd.add_option("--location", f.location,
                 "float location: theta0/pi for lagrange, x0 for shepard");
  cmd.add_flag("--irrational", f.irrational, "declare the float location irrational");
  cmd.add_option("--fn", f.fn, "function descriptor (JSON); default is the pure step");
  cmd.add_option("--jump", f.jump, "0-based jump index within --fn");
  cmd.add_option("--d", f.d, "point value of the pure step at its jump");
  cmd.add_option("--n-max", f.n_max, "largest operator order (>= 64)");
  cmd.add_option("--stride", f.stride, "write every stride-th row");
  cmd.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--out", f.out, "output path (default: stdout)");
  cmd.add_option("--threads", f.threads, "worker threads (0: all cores)");
  cmd.add_option("--value-tol", f.value_tol, "cluster value tolerance");
  cmd.add_option("--index-tol", f.index_tol, "cluster index tolerance");
  cmd.add_option("--ks-tol", f.ks_tol, "KS distance tolerance");
}

bool given(const CLI::App& cmd, const char* name) { return cmd.count(name) > 0; }

ExperimentConfig build_config(const CLI::App& cmd, const Flags& f) {
  ExperimentConfig cfg;
  nlohmann::json file = nlohmann::json::object();
  if (given(cmd, "--config")) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("config", "cannot open " + f.config);
    try {
      file = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config", e.what());
    }
  }
  // Flags override the file: fold them into the same JSON object first.
  if (given(cmd, "--operator")) file["operator"] = f.op;
  if (given(cmd, "--s")) file["s"] = f.s;
  if (given(cmd, "--fn")) file["fn"] = f.fn;
  if (given(cmd, "--jump")) file["jump"] = f.jump;
  if (given(cmd, "--d")) file["d"] = f.d;
  if (given(cmd, "--n-max")) file["n_max"] = f.n_max;
  if (given(cmd, "--stride")) file["stride"] = f.stride;
  if (given(cmd, "--format")) file["format"] = f.format;
  if (given(cmd, "--out")) file["out"] = f.out;
  if (given(cmd, "--threads")) file["threads"] = f.threads;
  if (given(cmd, "--value-tol")) file["value_tol"] = f.value_tol;
  if (given(cmd, "--index-tol")) file["index_tol"] = f.index_tol;
  if (given(cmd, "--ks-tol")) file["ks_tol"] = f.ks_tol;

  const bool flag_location = given(cmd, "--theta-num") || given(cmd, "--theta-den") ||
                             given(cmd, "--x0-num") || given(cmd, "--x0-den") ||
                             given(cmd, "--location");
  if (flag_location) {
    for (const char* key : {"theta_num", "theta_den", "x0_num", "x0_den", "location",
                            "irrational"}) {
      file.erase(key);
    }
    if (given(cmd, "--theta-num")) file["theta_num"] = f.theta_num;
    if (given(cmd, "--theta-den")) file["theta_den"] = f.theta_den;
    if (given(cmd, "--x0-num")) file["x0_num"] = f.x0_num;
    if (given(cmd, "--x0-den")) file["x0_den"] = f.x0_den;
    if (given(cmd, "--location")) file["location"] = f.location;
  }
  if (f.irrational) file["irrational"] = true;

  cfg = harness::config_from_json(file, cfg);
  cfg.validate();
  return cfg;
}

// Writes to --out when given, otherwise to stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("out", "cannot write " + path);
  out << text;
}

int cmd_run(const ExperimentConfig& cfg) {
  const auto run = harness::run_sequence(cfg);
  if (cfg.format == harness::Format::csv) {
    std::ostringstream os;
    harness::write_csv(run, cfg.stride, os);
    emit(cfg.out, os.str());
  } else {
    emit(cfg.out, harness::run_to_json(cfg, run).dump(2) + "\n");
  }
  return kPass;
}

int cmd_compare(const ExperimentConfig& cfg) {
  const auto report = harness::compare(cfg);
  if (cfg.format == harness::Format::json) {
    emit(cfg.out, harness::report_to_json(cfg, report).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "atom_value,atom_index,cluster_center,cluster_index,value_error,index_error\n";
    os.precision(17);
    for (const auto& m : report.matching) {
      const auto& a = report.atoms[m.atom];
      const auto& c = report.empirical.clusters[m.cluster];
      os << a.value << ',' << a.index.to_double() << ',' << c.center << ','
         << c.empirical_index << ',' << m.value_error << ',' << m.index_error << '\n';
    }
    emit(cfg.out, os.str());
  }
  std::cerr << (report.pass ? "PASS" : "FAIL");
  if (report.ks) std::cerr << " (KS distance " << report.ks->distance << ")";
  std::cerr << '\n';
  return report.pass ? kPass : kFail;
}

int cmd_predict(const ExperimentConfig& cfg) {
  emit(cfg.out, theory::to_json(harness::predict(cfg)).dump(2) + "\n");
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index-of-convergence experiments for interpolation operators at jumps"};
  app.require_subcommand(1);

  Flags run_flags, compare_flags, predict_flags;
  auto* run = app.add_subcommand("run", "evaluate the operator sequence at a jump");
  add_experiment_flags(*run, run_flags);
  auto* cmp = app.add_subcommand("compare", "cluster the sequence and test it against theory");
  add_experiment_flags(*cmp, compare_flags);
  auto* pred = app.add_subcommand("predict", "print the predicted limit spectrum");
  add_experiment_flags(*pred, predict_flags);

  auto* zeta = app.add_subcommand("zeta", "evaluate a special function");
  std::string kind = "hurwitz";
  double zs = 2.0, za = 1.0;
  zeta->add_option("--kind", kind, "hurwitz | lerch | g | gs")
      ->check(CLI::IsMember({"hurwitz", "lerch", "g", "gs"}));
  zeta->add_option("--s", zs, "exponent");
  zeta->add_option("--a", za, "shift a, or the profile argument x");

  auto* self = app.add_subcommand("selftest", "run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (*run) return cmd_run(build_config(*run, run_flags));
    if (*cmp) {
      auto cfg = build_config(*cmp, compare_flags);
      if (!given(*cmp, "--format") && !given(*cmp, "--config")) cfg.format = harness::Format::json;
      return cmd_compare(cfg);
    }
    if (*pred) return cmd_predict(build_config(*pred, predict_flags));
    if (*zeta) {
      nlohmann::json j = {{"kind", kind}, {"s", zs}, {"a", za}};
      if (kind == "hurwitz" || kind == "lerch") {
        const auto r = kind == "hurwitz" ? specfun::hurwitz_zeta(zs, za) : specfun::lerch_J(zs, za);
        j["value"] = r.value;
        j["abs_error_bound"] = r.abs_error_bound;
      } else {
        j["value"] = kind == "g" ? specfun::g_lagrange(za) : specfun::g_shepard(zs, za);
      }
      std::cout << j.dump(2) << '\n';
      return kPass;
    }
    if (*self) {
      bool ok = true;
      for (const auto& r : harness::run_selftests()) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << "  " << r.detail;
        std::cout << '\n';
        ok = ok && r.pass;
      }
      return ok ? kPass : kFail;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  }
  return kConfig;
}
