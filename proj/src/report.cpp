#include <cstdio>
#include <ostream>

#include "convidx/descriptor.hpp"
#include "convidx/errors.hpp"
#include "convidx/harness.hpp"

namespace convidx::harness {

using nlohmann::json;
using piecewise::JumpLocation;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* operator_name(Operator op) { return op == Operator::lagrange ? "lagrange" : "shepard"; }

template <typename T>
T read(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

std::optional<Rational> read_rational(const json& j, const char* num, const char* den) {
  const bool has_num = j.contains(num);
  const bool has_den = j.contains(den);
  if (!has_num && !has_den) return std::nullopt;
  if (has_num != has_den) throw ConfigError(has_num ? den : num, "missing");
  try {
    return Rational(j[num].get<std::int64_t>(), j[den].get<std::int64_t>());
  } catch (const json::exception& e) {
    throw ConfigError(num, e.what());
  } catch (const DomainError& e) {
    throw ConfigError(den, e.what());
  }
}

}  // namespace

void write_csv(const SequenceRun& run, std::size_t stride, std::ostream& out) {
  if (stride == 0) throw ConfigError("stride", "must be at least 1");
  const bool exact = !run.sigma.empty() && run.sigma.front().sigma_exact.has_value();
  out << (exact ? "n,sigma_num,sigma_den,is_node,value\n" : "n,sigma_float,is_node,value\n");
  const auto values = run.values.values();
  for (std::size_t n = 1; n <= values.size(); n += stride) {
    const SigmaTrace& tr = run.sigma[n - 1];
    out << n << ',';
    if (exact) {
      out << tr.sigma_exact->num() << ',' << tr.sigma_exact->den();
    } else {
      out << format_double(tr.sigma);
    }
    out << ',' << (tr.is_node ? 1 : 0) << ',' << format_double(values[n - 1]) << '\n';
  }
}

json config_to_json(const ExperimentConfig& cfg) {
  json j = {{"operator", operator_name(cfg.op)},
            {"jump", cfg.jump},
            {"d", cfg.d},
            {"n_max", cfg.n_max},
            {"stride", cfg.stride},
            {"eps_grid", cfg.eps_grid},
            {"gap", cfg.gap},
            {"tail_fraction", cfg.tail_fraction},
            {"index_floor", cfg.index_floor},
            {"value_tol", cfg.effective_value_tol()},
            {"index_tol", cfg.index_tol},
            {"ks_tol", cfg.ks_tol},
            {"format", cfg.format == Format::csv ? "csv" : "json"}};
  if (cfg.op == Operator::shepard) j["s"] = cfg.s;
  if (cfg.function) j["fn"] = piecewise::to_json(*cfg.function);
  if (cfg.location) {
    const auto& loc = *cfg.location;
    using K = JumpLocation::Kind;
    switch (loc.kind()) {
      case K::rational_theta:
        j["theta_num"] = loc.declared_rational()->num();
        j["theta_den"] = loc.declared_rational()->den();
        break;
      case K::rational_x:
        j["x0_num"] = loc.declared_rational()->num();
        j["x0_den"] = loc.declared_rational()->den();
        break;
      case K::irrational_theta:
      case K::irrational_x:
        j["location"] = loc.declared_value();
        j["irrational"] = true;
        break;
      case K::plain:
        j["location"] = cfg.op == Operator::lagrange ? loc.theta_over_pi() : loc.x();
        break;
    }
  }
  return j;
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig cfg) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  if (auto it = j.find("operator"); it != j.end()) {
    const auto name = read<std::string>(j, "operator", "");
    if (name == "lagrange") {
      cfg.op = Operator::lagrange;
    } else if (name == "shepard") {
      cfg.op = Operator::shepard;
    } else {
      throw ConfigError("operator", "must be lagrange or shepard");
    }
  }
  cfg.s = read(j, "s", cfg.s);
  cfg.jump = read(j, "jump", cfg.jump);
  cfg.d = read(j, "d", cfg.d);
  cfg.n_max = read(j, "n_max", cfg.n_max);
  cfg.stride = read(j, "stride", cfg.stride);
  cfg.eps_grid = read(j, "eps_grid", cfg.eps_grid);
  cfg.gap = read(j, "gap", cfg.gap);
  cfg.tail_fraction = read(j, "tail_fraction", cfg.tail_fraction);
  cfg.index_floor = read(j, "index_floor", cfg.index_floor);
  if (j.contains("value_tol")) cfg.value_tol = read(j, "value_tol", 0.0);
  cfg.index_tol = read(j, "index_tol", cfg.index_tol);
  cfg.ks_tol = read(j, "ks_tol", cfg.ks_tol);
  cfg.out = read(j, "out", cfg.out);
  cfg.threads = read(j, "threads", cfg.threads);
  if (j.contains("format")) {
    const auto f = read<std::string>(j, "format", "");
    if (f != "csv" && f != "json") throw ConfigError("format", "must be csv or json");
    cfg.format = f == "csv" ? Format::csv : Format::json;
  }
  if (auto it = j.find("fn"); it != j.end()) {
    cfg.function = it->is_string() ? piecewise::load_descriptor(it->get<std::string>())
                                    : piecewise::function_from_json(*it);
  }
  auto theta = read_rational(j, "theta_num", "theta_den");
  auto x0 = read_rational(j, "x0_num", "x0_den");
  std::optional<double> value;
  if (j.contains("location")) value = read(j, "location", 0.0);
  if (theta || x0 || value) {
    cfg.location = make_location(cfg.op, theta, x0, value, read(j, "irrational", false));
  }
  return cfg;
}

json clusters_to_json(const density::ClusterReport& clusters) {
  json list = json::array();
  for (const auto& c : clusters.clusters) {
    list.push_back({{"center", c.center},
                    {"empirical_index", c.empirical_index},
                    {"count", c.count},
                    {"eps", c.eps}});
  }
  return {{"clusters", list},
          {"index_sum", clusters.index_sum()},
          {"unassigned_fraction", clusters.unassigned_fraction}};
}

json run_to_json(const ExperimentConfig& cfg, const SequenceRun& run) {
  json rows = json::array();
  const auto values = run.values.values();
  for (std::size_t n = 1; n <= values.size(); n += cfg.stride) {
    const SigmaTrace& tr = run.sigma[n - 1];
    json row = {{"n", n}, {"is_node", tr.is_node}, {"value", values[n - 1]}};
    if (tr.sigma_exact) {
      row["sigma_num"] = tr.sigma_exact->num();
      row["sigma_den"] = tr.sigma_exact->den();
    } else {
      row["sigma_float"] = tr.sigma;
    }
    rows.push_back(std::move(row));
  }
  return {{"config", config_to_json(cfg)}, {"rows", rows}};
}

json report_to_json(const ExperimentConfig& cfg, const ComparisonReport& rep) {
  json atoms = json::array();
  for (const auto& a : rep.atoms) {
    atoms.push_back(
        {{"value", a.value}, {"index_num", a.index.num()}, {"index_den", a.index.den()}});
  }
  json matching = json::array();
  for (const auto& m : rep.matching) {
    const auto& a = rep.atoms[m.atom];
    const auto& c = rep.empirical.clusters[m.cluster];
    matching.push_back({{"atom_value", a.value},
                        {"atom_index", a.index.to_double()},
                        {"cluster_center", c.center},
                        {"cluster_index", c.empirical_index},
                        {"value_error", m.value_error},
                        {"index_error", m.index_error}});
  }
  json ks = nullptr;
  if (rep.ks) ks = {{"distance", rep.ks->distance}, {"samples", rep.ks->samples}};
  return {{"config", config_to_json(cfg)},
          {"predicted", theory::to_json(rep.predicted)},
          {"compared_atoms", atoms},
          {"empirical", clusters_to_json(rep.empirical)},
          {"matching", matching},
          {"unmatched_atoms", rep.unmatched_atoms},
          {"unmatched_clusters", rep.unmatched_clusters},
          {"ks", ks},
          {"tolerances",
           {{"value_tol", rep.value_tol}, {"index_tol", rep.index_tol}, {"ks_tol", rep.ks_tol}}},
          {"pass", rep.pass}};
}

}  // namespace convidx::harness
