#include "heavyloc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "heavyloc/error.hpp"
#include "heavyloc/estimators.hpp"
#include "heavyloc/format.hpp"
#include "heavyloc/parallel.hpp"
#include "heavyloc/spectrum.hpp"
#include "heavyloc/stats.hpp"

namespace heavyloc {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

const std::pair<Experiment, const char*> kExperimentNames[] = {
    {Experiment::lyapunov, "lyapunov"}, {Experiment::ids, "ids"},       {Experiment::nonlinear, "nonlinear"},
    {Experiment::darling, "darling"},   {Experiment::mixing, "mixing"}, {Experiment::spectrum, "spectrum"},
};

struct Row {
  double alpha;
  double energy;
  std::size_t n;
  std::int64_t seed;  // -1 for rows aggregated over seeds
  std::string observable;
  double value;
};

struct EigenRow {
  double alpha, energy;
  std::int64_t seed;
  std::size_t box, index;
  double lambda, slope, r_squared, slope_linear, r_squared_linear;
};

struct TaskSpec {
  double alpha;
  double energy;
  std::size_t n;  // 0 when the task covers the whole n_grid
  std::int64_t seed;
};

struct TaskResult {
  std::vector<Row> rows;
  std::vector<EigenRow> eigen;
  std::string error;
  bool saturated = false;
};

ModelConfig task_model(const ExperimentConfig& config, double alpha, double energy) {
  ModelConfig m = config.model;
  if (m.model == Model::III)
    m.alpha2 = alpha;
  else
    m.alpha1 = alpha;
  m.energy = energy;
  return m;
}

std::vector<std::size_t> sorted_grid(const std::vector<std::size_t>& grid) {
  std::vector<std::size_t> g = grid;
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::vector<TaskSpec> make_tasks(const ExperimentConfig& config) {
  std::vector<TaskSpec> tasks;
  const auto ns = sorted_grid(config.n_grid);
  const auto seeds = static_cast<std::int64_t>(config.n_seeds);
  for (double a : config.alpha_grid) {
    switch (config.experiment) {
      case Experiment::darling:
        for (std::size_t n : ns)
          for (std::int64_t s = 0; s < seeds; ++s) tasks.push_back({a, std::nan(""), n, s});
        break;
      case Experiment::lyapunov:
      case Experiment::ids:
        for (double e : config.energy_grid)
          for (std::int64_t s = 0; s < seeds; ++s) tasks.push_back({a, e, 0, s});
        break;
      case Experiment::mixing:
        for (double e : config.energy_grid) tasks.push_back({a, e, ns.back(), -1});
        break;
      case Experiment::nonlinear:
      case Experiment::spectrum:
        for (double e : config.energy_grid)
          for (std::size_t n : ns)
            for (std::int64_t s = 0; s < seeds; ++s) tasks.push_back({a, e, n, s});
        break;
    }
  }
  return tasks;
}

double natural_scale_exponent(const ModelConfig& m) {
  switch (m.model) {
    case Model::I:
    case Model::IV:
      return 1.0 / m.alpha1;
    case Model::II:
      return 1.0;
    case Model::III:
      return m.alpha2;
  }
  return 1.0;
}

void trace_task(const ExperimentConfig& config, const TaskSpec& t, RngStream& stream, TaskResult& out) {
  const ModelConfig m = task_model(config, t.alpha, t.energy);
  const auto ns = sorted_grid(config.n_grid);
  const Realization r = generate(m, ns.back(), stream);
  const EnergyFrame frame(m.energy);
  auto add = [&](std::size_t n, const char* name, double v) { out.rows.push_back({t.alpha, t.energy, n, t.seed, name, v}); };
  if (config.experiment == Experiment::lyapunov) {
    const double k2 = m.energy;
    std::vector<double> excess_sum;
    if (m.model == Model::I) {
      double acc = 0.0;
      for (double x : r.bump_heights) {
        if (x > k2) acc += std::sqrt(x - k2);
        excess_sum.push_back(acc);
      }
    }
    for (const LyapunovPoint& p : lyapunov_trace(r, frame, ns)) {
      const double nn = static_cast<double>(p.n);
      add(p.n, "log_norm", p.log_norm);
      add(p.n, "lyap_per_length", p.log_norm / p.x);
      add(p.n, "lyap_per_bump", p.log_norm / nn);
      const double nl = m.model == Model::III ? p.log_norm / std::pow(p.x, m.alpha2)
                                              : p.log_norm / nonlinear_normalizer(m, Functional::lyapunov, p.n);
      add(p.n, "lyap_nonlinear", nl);
      if (m.model == Model::I) add(p.n, "lyap_excess_ratio", p.log_norm / excess_sum[p.n - 1]);
    }
  } else {
    const double k = frame.k();
    std::vector<double> root_sum;
    if (m.model == Model::II) {
      double acc = 0.0;
      for (double x : r.bump_heights) {
        acc += std::sqrt(std::abs(m.energy) + x);
        root_sum.push_back(acc);
      }
    }
    for (const RotationPoint& p : ids_trace(r, frame, m.theta0, ns)) {
      add(p.n, "theta_over_pi", p.theta_over_pi);
      add(p.n, "ids_per_length", p.theta_over_pi / p.x);
      add(p.n, "ids_per_length_k", p.theta_over_pi / (p.x * k));
      add(p.n, "ids_nonlinear", p.theta_over_pi / nonlinear_normalizer(m, Functional::ids, p.n));
      if (m.model == Model::II)
        add(p.n, "rotation_excess_over_pi", p.theta_over_pi - root_sum[p.n - 1] / std::numbers::pi);
    }
  }
}

void nonlinear_task(const ExperimentConfig& config, const TaskSpec& t, RngStream& stream, TaskResult& out) {
  const ModelConfig m = task_model(config, t.alpha, t.energy);
  const Realization r = generate(m, t.n, stream);
  out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "lyap_nonlinear", nonlinear_value(m, r, Functional::lyapunov)});
  out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "ids_nonlinear", nonlinear_value(m, r, Functional::ids)});
  if (m.model == Model::III || m.model == Model::IV)
    out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "scaled_length",
                        r.total_length() / std::pow(static_cast<double>(t.n), 1.0 / m.alpha2)});
}

void darling_task(const TaskSpec& t, RngStream& stream, TaskResult& out) {
  double sum = 0.0, max = 0.0;
  for (std::size_t i = 0; i < t.n; ++i) {
    const double z = sample_frechet(t.alpha, stream);
    sum += z;
    max = std::max(max, z);
  }
  out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "stable_sum", sum / std::pow(static_cast<double>(t.n), 1.0 / t.alpha)});
  out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "darling_ratio", max / sum});
}

void mixing_task(const ExperimentConfig& config, const TaskSpec& t, RngStream& stream, TaskResult& out) {
  const ModelConfig m = task_model(config, t.alpha, t.energy);
  const MixingResult res = chain_mixing(m, t.n, config.initial_points, config.n_seeds, stream);
  for (std::size_t p = 0; p < res.pairs.size(); ++p) {
    const std::string name = "ks(" + format_double(res.initial_points[res.pairs[p].first]) + "," +
                             format_double(res.initial_points[res.pairs[p].second]) + ")";
    for (std::size_t step = 0; step < res.ks[p].size(); ++step)
      out.rows.push_back({t.alpha, t.energy, step, -1, name, res.ks[p][step]});
  }
}

void spectrum_task(const ExperimentConfig& config, const TaskSpec& t, RngStream& stream, TaskResult& out) {
  const ModelConfig m = task_model(config, t.alpha, t.energy);
  const Realization r = generate(m, t.n, stream);
  const BoxProblem box = make_box(r, r.total_length(), m.theta0);
  std::vector<double> eigs = find_eigenvalues(box, t.energy - config.spectrum_half_width, t.energy + config.spectrum_half_width);
  if (eigs.size() > config.max_eigenvalues) eigs.resize(config.max_eigenvalues);
  const double p = config.scale_exponent > 0.0 ? config.scale_exponent : natural_scale_exponent(m);
  out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "eigen_count", static_cast<double>(eigs.size())});
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const Envelope env = eigenfunction_envelope(box, eigs[i]);
    // A single long gap can cover the middle of the box; such fits are reported as NaN.
    auto fit = [&](double exponent) {
      try {
        return decay_fit(env, box.length, exponent);
      } catch (const ParameterError&) {
        return DecayFit{exponent, std::nan(""), std::nan("")};
      }
    };
    const DecayFit nat = fit(p);
    const DecayFit lin = fit(1.0);
    out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "lambda", eigs[i]});
    out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "slope", nat.slope});
    out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "r_squared", nat.r_squared});
    out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "slope_linear", lin.slope});
    out.rows.push_back({t.alpha, t.energy, t.n, t.seed, "r_squared_linear", lin.r_squared});
    out.eigen.push_back({t.alpha, t.energy, t.seed, t.n, i, eigs[i], nat.slope, nat.r_squared, lin.slope, lin.r_squared});
  }
}

TaskResult run_task(const ExperimentConfig& config, const TaskSpec& t, RngStream stream) {
  TaskResult out;
  try {
    switch (config.experiment) {
      case Experiment::lyapunov:
      case Experiment::ids:
        trace_task(config, t, stream, out);
        break;
      case Experiment::nonlinear:
        nonlinear_task(config, t, stream, out);
        break;
      case Experiment::darling:
        darling_task(t, stream, out);
        break;
      case Experiment::mixing:
        mixing_task(config, t, stream, out);
        break;
      case Experiment::spectrum:
        spectrum_task(config, t, stream, out);
        break;
    }
  } catch (const SaturationError& e) {
    out = TaskResult{};
    out.saturated = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out = TaskResult{};
    out.error = e.what();
  }
  return out;
}

std::string task_label(const ExperimentConfig& config, std::size_t index, const TaskSpec& t) {
  std::ostringstream s;
  s << "task " << index << " (" << to_string(config.experiment) << ", model " << to_string(config.model.model)
    << ", alpha " << format_double(t.alpha) << ", energy " << format_double(t.energy) << ", n " << t.n << ", seed "
    << t.seed << ")";
  return s.str();
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  out.close();
  return static_cast<bool>(out);
}

using GroupKey = std::tuple<double, double, std::size_t, std::string>;

double json_number(double v) { return std::isfinite(v) ? v : std::nan(""); }

ordered_json build_summary(const ExperimentConfig& config, const std::vector<TaskSpec>& tasks,
                           const std::vector<TaskResult>& results) {
  // Keys compare NaN energies (darling) as equal by mapping them to a sentinel.
  auto key_energy = [](double e) { return std::isnan(e) ? -std::numeric_limits<double>::infinity() : e; };
  std::map<GroupKey, std::vector<double>> groups;
  for (const TaskResult& r : results)
    for (const Row& row : r.rows) groups[{row.alpha, key_energy(row.energy), row.n, row.observable}].push_back(row.value);

  auto energy_out = [](double e) -> ordered_json {
    if (std::isinf(e)) return nullptr;
    return e;
  };

  ordered_json summary;
  summary["experiment"] = to_string(config.experiment);
  summary["model"] = to_string(config.model.model);
  summary["master_seed"] = config.master_seed;

  ordered_json jgroups = ordered_json::array();
  for (const auto& [key, values] : groups) {
    const auto& [alpha, energy, n, obs] = key;
    ordered_json g;
    g["alpha"] = alpha;
    g["energy"] = energy_out(energy);
    g["n"] = n;
    g["observable"] = obs;
    g["count"] = values.size();
    std::vector<double> finite;
    for (double v : values)
      if (std::isfinite(v)) finite.push_back(v);
    if (!finite.empty()) {
      g["median"] = median(finite);
      g["q25"] = quantile(finite, 0.25);
      g["q75"] = quantile(finite, 0.75);
      if (finite.size() >= 2) {
        const MeanCi ci = mean_ci(finite);
        g["mean"] = ci.mean;
        g["ci95_half_width"] = ci.half_width;
      } else {
        g["mean"] = finite.front();
      }
    }
    jgroups.push_back(std::move(g));
  }
  summary["groups"] = std::move(jgroups);

  // Distributional convergence between consecutive n values and median growth in n.
  std::map<std::tuple<double, double, std::string>, std::map<std::size_t, const std::vector<double>*>> by_n;
  for (const auto& [key, values] : groups) {
    const auto& [alpha, energy, n, obs] = key;
    by_n[{alpha, energy, obs}][n] = &values;
  }
  ordered_json ks = ordered_json::array();
  ordered_json fits = ordered_json::array();
  const bool per_seed = config.experiment != Experiment::mixing;
  for (const auto& [key, series] : by_n) {
    const auto& [alpha, energy, obs] = key;
    if (per_seed) {
      for (auto it = series.begin(); std::next(it) != series.end(); ++it) {
        auto nx = std::next(it);
        std::vector<double> a, b;
        for (double v : *it->second)
          if (std::isfinite(v)) a.push_back(v);
        for (double v : *nx->second)
          if (std::isfinite(v)) b.push_back(v);
        if (a.size() < 2 || b.size() < 2) continue;
        ordered_json k;
        k["alpha"] = alpha;
        k["energy"] = energy_out(energy);
        k["observable"] = obs;
        k["n_a"] = it->first;
        k["n_b"] = nx->first;
        k["ks"] = ks_distance(Ecdf(a), Ecdf(b));
        k["critical_95"] = ks_critical_value(a.size(), b.size());
        ks.push_back(std::move(k));
      }
    }
    // Per seed: slope of ln(median) against ln(n). Mixing: slope of ln(KS) against the step.
    std::vector<double> xs, ys;
    for (const auto& [n, values] : series) {
      std::vector<double> finite;
      for (double v : *values)
        if (std::isfinite(v)) finite.push_back(v);
      if (finite.empty() || n == 0) continue;
      const double med = median(finite);
      if (!(med > 0.0)) continue;
      xs.push_back(per_seed ? std::log(static_cast<double>(n)) : static_cast<double>(n));
      ys.push_back(std::log(med));
    }
    if (xs.size() >= 3 || (per_seed && xs.size() >= 2)) {
      const LinearFit fit = linear_fit(xs, ys);
      ordered_json f;
      f["alpha"] = alpha;
      f["energy"] = energy_out(energy);
      f["observable"] = obs;
      f["regressor"] = per_seed ? "ln n" : "n";
      f["slope"] = json_number(fit.slope);
      f["intercept"] = json_number(fit.intercept);
      f["r_squared"] = json_number(fit.r_squared);
      f["points"] = xs.size();
      fits.push_back(std::move(f));
    }
  }
  summary["ks_between_n"] = std::move(ks);
  summary["fitted_slopes"] = std::move(fits);

  ordered_json failed = ordered_json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].error.empty()) continue;
    ordered_json f;
    f["task"] = i;
    f["alpha"] = tasks[i].alpha;
    f["energy"] = json_number(tasks[i].energy);
    f["n"] = tasks[i].n;
    f["seed"] = tasks[i].seed;
    f["kind"] = results[i].saturated ? "saturation" : "error";
    f["message"] = results[i].error;
    failed.push_back(std::move(f));
  }
  summary["failed_tasks"] = std::move(failed);
  return summary;
}

void print_digest(std::ostream& out, const ordered_json& summary) {
  out << "experiment " << summary["experiment"].get<std::string>() << ", model " << summary["model"].get<std::string>()
      << "\n";
  for (const auto& g : summary["groups"]) {
    out << "  alpha=" << format_double(g["alpha"].get<double>());
    if (!g["energy"].is_null()) out << " energy=" << format_double(g["energy"].get<double>());
    out << " n=" << g["n"].get<std::size_t>() << " " << g["observable"].get<std::string>()
        << " count=" << g["count"].get<std::size_t>();
    if (g.contains("median")) out << " median=" << format_double(g["median"].get<double>());
    out << "\n";
  }
  for (const auto& k : summary["ks_between_n"])
    out << "  KS " << k["observable"].get<std::string>() << " n=" << k["n_a"].get<std::size_t>() << " vs "
        << k["n_b"].get<std::size_t>() << ": " << format_double(k["ks"].get<double>()) << "\n";
  if (!summary["failed_tasks"].empty()) out << "  failed tasks: " << summary["failed_tasks"].size() << "\n";
}

template <class T>
void read_field(const json& doc, const char* name, T& target, std::vector<std::string>& diag, bool required) {
  if (!doc.contains(name)) {
    if (required) diag.push_back(std::string("missing field '") + name + "'");
    return;
  }
  const json& v = doc.at(name);
  if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) {
      diag.push_back(std::string("field '") + name + "' must be a number");
      return;
    }
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) {
      diag.push_back(std::string("field '") + name + "' must be an integer");
      return;
    }
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned() == false && v.get<std::int64_t>() < 0) {
        diag.push_back(std::string("field '") + name + "' must be non-negative");
        return;
      }
    }
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) {
      diag.push_back(std::string("field '") + name + "' must be a string");
      return;
    }
  }
  target = v.get<T>();
}

template <class T>
void read_list(const json& doc, const char* name, std::vector<T>& target, std::vector<std::string>& diag,
               bool required) {
  if (!doc.contains(name)) {
    if (required) diag.push_back(std::string("missing field '") + name + "'");
    return;
  }
  const json& v = doc.at(name);
  if (!v.is_array()) {
    diag.push_back(std::string("field '") + name + "' must be a list");
    return;
  }
  target.clear();
  for (const json& e : v) {
    if constexpr (std::is_integral_v<T>) {
      if (!e.is_number_integer() || (!e.is_number_unsigned() && e.get<std::int64_t>() < 0)) {
        diag.push_back(std::string("field '") + name + "' must hold non-negative integers");
        return;
      }
    } else if (!e.is_number()) {
      diag.push_back(std::string("field '") + name + "' must hold numbers");
      return;
    }
    target.push_back(e.get<T>());
  }
}

}  // namespace

std::string to_string(Experiment experiment) {
  for (const auto& [e, name] : kExperimentNames)
    if (e == experiment) return name;
  return "unknown";
}

nlohmann::json ExperimentConfig::to_json() const {
  ordered_json j;
  j["experiment"] = to_string(experiment);
  j["model"] = {{"model", to_string(model.model)},
                {"alpha1", model.alpha1},
                {"alpha2", model.alpha2},
                {"theta0", model.theta0}};
  j["alpha_grid"] = alpha_grid;
  j["energy_grid"] = energy_grid;
  j["n_grid"] = n_grid;
  j["n_seeds"] = n_seeds;
  j["master_seed"] = master_seed;
  j["output_dir"] = output_dir;
  j["workers"] = workers;
  if (experiment == Experiment::mixing) j["initial_points"] = initial_points;
  if (experiment == Experiment::spectrum)
    j["spectrum"] = {{"half_width", spectrum_half_width},
                     {"max_eigenvalues", max_eigenvalues},
                     {"scale_exponent", scale_exponent}};
  return json::parse(j.dump());
}

ExperimentConfig parse_config(const json& doc, std::vector<std::string>& diag) {
  ExperimentConfig c;
  if (!doc.is_object()) {
    diag.push_back("config must be a JSON object");
    return c;
  }
  std::string experiment;
  read_field(doc, "experiment", experiment, diag, true);
  if (doc.contains("experiment") && doc["experiment"].is_string()) {
    bool found = false;
    for (const auto& [e, name] : kExperimentNames)
      if (experiment == name) {
        c.experiment = e;
        found = true;
      }
    if (!found) diag.push_back("unknown experiment '" + experiment + "'");
  }
  if (!doc.contains("model")) {
    diag.push_back("missing field 'model'");
  } else if (!doc["model"].is_object()) {
    diag.push_back("field 'model' must be an object");
  } else {
    const json& m = doc["model"];
    std::string name;
    read_field(m, "model", name, diag, true);
    if (m.contains("model") && m["model"].is_string()) {
      try {
        c.model.model = model_from_string(name);
      } catch (const std::exception&) {
        diag.push_back("unknown model '" + name + "' (expected I, II, III or IV)");
      }
    }
    read_field(m, "alpha1", c.model.alpha1, diag, false);
    read_field(m, "alpha2", c.model.alpha2, diag, false);
    read_field(m, "theta0", c.model.theta0, diag, false);
  }
  read_list(doc, "alpha_grid", c.alpha_grid, diag, true);
  read_list(doc, "energy_grid", c.energy_grid, diag, true);
  read_list(doc, "n_grid", c.n_grid, diag, true);
  read_field(doc, "n_seeds", c.n_seeds, diag, true);
  read_field(doc, "master_seed", c.master_seed, diag, true);
  read_field(doc, "output_dir", c.output_dir, diag, false);
  read_field(doc, "workers", c.workers, diag, false);
  read_list(doc, "initial_points", c.initial_points, diag, false);
  if (doc.contains("spectrum")) {
    const json& s = doc["spectrum"];
    if (!s.is_object()) {
      diag.push_back("field 'spectrum' must be an object");
    } else {
      read_field(s, "half_width", c.spectrum_half_width, diag, false);
      read_field(s, "max_eigenvalues", c.max_eigenvalues, diag, false);
      read_field(s, "scale_exponent", c.scale_exponent, diag, false);
    }
  }
  return c;
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> diag;
  auto add = [&](std::string msg) {
    if (std::find(diag.begin(), diag.end(), msg) == diag.end()) diag.push_back(std::move(msg));
  };
  if (c.alpha_grid.empty()) add("alpha_grid must not be empty");
  if (c.energy_grid.empty()) add("energy_grid must not be empty");
  if (c.n_grid.empty()) add("n_grid must not be empty");
  for (double a : c.alpha_grid)
    if (!(a > 0.0 && a < 1.0)) add("alpha_grid: alpha must lie in (0,1)");
  for (std::size_t n : c.n_grid)
    if (n < 1) add("n_grid entries must be >= 1");
  if (c.n_seeds < 1) add("n_seeds must be >= 1");
  if (c.workers < 1) add("workers must be >= 1");
  if (c.output_dir.empty()) add("output_dir must not be empty");
  for (double a : c.alpha_grid.empty() ? std::vector<double>{c.model.primary_alpha()} : c.alpha_grid)
    for (double e : c.energy_grid) {
      if (c.experiment == Experiment::darling) break;
      for (std::string& d : config_diagnostics(task_model(c, a, e))) add(std::move(d));
    }
  if (c.energy_grid.empty() && c.experiment != Experiment::darling)
    for (std::string& d : config_diagnostics(c.model))
      if (d.find("energy") == std::string::npos) add(std::move(d));
  if (c.experiment == Experiment::mixing) {
    if (c.model.model != Model::I) add("mixing experiment requires Model I");
    if (c.initial_points.size() < 2) add("initial_points needs at least two entries");
    for (double t : c.initial_points)
      if (!std::isfinite(t)) add("initial_points must be finite");
    if (c.n_seeds < 2) add("mixing experiment needs n_seeds >= 2");
  }
  if (c.experiment == Experiment::spectrum) {
    if (!(c.spectrum_half_width > 0.0)) add("spectrum.half_width must be > 0");
    if (c.max_eigenvalues < 1) add("spectrum.max_eigenvalues must be >= 1");
    if (!(c.scale_exponent >= 0.0)) add("spectrum.scale_exponent must be >= 0");
  }
  return diag;
}

std::vector<std::string> validate(const json& doc) {
  std::vector<std::string> diag;
  const ExperimentConfig c = parse_config(doc, diag);
  if (!diag.empty()) return diag;
  return validate(c);
}

int run(const ExperimentConfig& config) {
  const auto diag = validate(config);
  if (!diag.empty()) {
    for (const auto& d : diag) std::cerr << "invalid config: " << d << "\n";
    return kExitInvalidConfig;
  }
  namespace fs = std::filesystem;
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "cannot create output directory " << dir << "\n";
    return kExitIo;
  }

  const std::vector<TaskSpec> tasks = make_tasks(config);
  std::vector<TaskResult> results(tasks.size());
  const RngStream master(config.master_seed, 0);
  parallel_for(tasks.size(), config.workers,
               [&](std::size_t i) { results[i] = run_task(config, tasks[i], split_stream(master, i)); });

  const std::string experiment = to_string(config.experiment);
  const std::string model = to_string(config.model.model);
  std::string csv = "experiment,model,alpha,energy,n,seed,observable,value\n";
  std::string eig_csv =
      "alpha,energy,seed,box,index,lambda,slope,r_squared,slope_linear,r_squared_linear\n";
  bool saturated = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].error.empty()) {
      std::cerr << (results[i].saturated ? "numerical saturation in " : "failure in ")
                << task_label(config, i, tasks[i]) << ": " << results[i].error << "\n";
      saturated = true;
    }
    for (const Row& r : results[i].rows) {
      csv += experiment + ',' + model + ',' + format_double(r.alpha) + ',' + format_double(r.energy) + ',' +
             std::to_string(r.n) + ',' + std::to_string(r.seed) + ',' + r.observable + ',' + format_double(r.value) +
             '\n';
    }
    for (const EigenRow& e : results[i].eigen) {
      eig_csv += format_double(e.alpha) + ',' + format_double(e.energy) + ',' + std::to_string(e.seed) + ',' +
                 std::to_string(e.box) + ',' + std::to_string(e.index) + ',' + format_double(e.lambda) + ',' +
                 format_double(e.slope) + ',' + format_double(e.r_squared) + ',' + format_double(e.slope_linear) +
                 ',' + format_double(e.r_squared_linear) + '\n';
    }
  }

  const ordered_json summary = build_summary(config, tasks, results);
  ordered_json manifest;
  manifest["code_version"] = kCodeVersion;
  manifest["master_seed"] = config.master_seed;
  manifest["tasks"] = tasks.size();
  manifest["config"] = config.to_json();
  std::vector<std::string> files{"results.csv", "summary.json", "manifest.json"};
  if (config.experiment == Experiment::spectrum) files.push_back("eigenvalues.csv");
  manifest["files"] = files;

  bool ok = write_file(dir / "results.csv", csv) && write_file(dir / "summary.json", summary.dump(2) + "\n") &&
            write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  if (ok && config.experiment == Experiment::spectrum) ok = write_file(dir / "eigenvalues.csv", eig_csv);
  if (!ok) {
    std::cerr << "failed writing results to " << dir << "\n";
    return kExitIo;
  }
  print_digest(std::cout, summary);
  return saturated ? kExitNumerical : kExitOk;
}

}  // namespace heavyloc
