#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/classical.hpp"
#include "qwalk/config.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/stats.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// 17 significant digits: enough for exact double round-trips, so emitted
// files are byte-reproducible and re-analysis matches in-memory values.
inline std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

inline void write_distribution_csv(std::ostream& out, const Distribution& dist) {
  for (int i = 0; i < dist.dim(); ++i) out << 'x' << (i + 1) << ',';
  out << "probability\n";
  for (const auto& [point, mass] : dist.entries()) {
    for (int i = 0; i < dist.dim(); ++i) out << point[i] << ',';
    out << format_double(mass) << '\n';
  }
}

inline Distribution read_distribution_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("empty distribution file");
  const int dim = static_cast<int>(std::count(header.begin(), header.end(), ',') );
  Distribution dist(dim);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::array<int, kDimMax> coords{};
    char sep = 0;
    for (int i = 0; i < dim; ++i) {
      if (!(row >> coords[i] >> sep) || sep != ',') {
        throw std::invalid_argument("malformed distribution row: " + line);
      }
    }
    double mass = 0.0;
    if (!(row >> mass)) throw std::invalid_argument("malformed distribution row: " + line);
    dist.add(LatticePoint(std::span<const int>(coords.data(), static_cast<size_t>(dim))), mass);
  }
  dist.finalize();
  return dist;
}

inline void write_sigma_csv(std::ostream& out, const SigmaSeries& series) {
  out << "t,sigma\n";
  for (const SigmaSample& s : series.samples) {
    out << s.t << ',' << format_double(s.sigma) << '\n';
  }
}

inline SigmaSeries read_sigma_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty sigma file");
  SigmaSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    SigmaSample s;
    char sep = 0;
    if (!(row >> s.t >> sep >> s.sigma) || sep != ',') {
      throw std::invalid_argument("malformed sigma row: " + line);
    }
    series.samples.push_back(s);
  }
  return series;
}

inline nlohmann::ordered_json config_json(const WalkConfig& config) {
  return {
      {"dim", config.dim},          {"coin", config.coin},   {"dressed", config.dressed},
      {"initial", config.initial},  {"steps", config.steps}, {"seed", config.seed},
      {"trials", config.trials},    {"t_min", config.t_min},
  };
}

inline nlohmann::ordered_json version_json() {
  return {{"code", std::string("qwalk ") + std::string(kVersion)}, {"rng", kRngName}};
}

// Loads a 2^d x 2^d matrix from a JSON file: an array of rows, each entry a
// real number or an [re, im] pair.
inline std::vector<Complex> load_matrix_json(const std::filesystem::path& path, int dim) {
  check_dimension(dim);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coin matrix file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad coin matrix JSON in " + path.string() + ": " + e.what());
  }
  const size_t n = size_t{1} << dim;
  if (!doc.is_array() || doc.size() != n) {
    throw std::invalid_argument("coin matrix in " + path.string() + " must have " +
                                std::to_string(n) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (const auto& row : doc) {
    if (!row.is_array() || row.size() != n) {
      throw std::invalid_argument("coin matrix rows must have " + std::to_string(n) + " entries");
    }
    for (const auto& cell : row) {
      if (cell.is_number()) {
        entries.emplace_back(cell.get<double>(), 0.0);
      } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() && cell[1].is_number()) {
        entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
      } else {
        throw std::invalid_argument("coin matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return entries;
}

// Resolves file-backed config parts (currently the custom coin matrix).
inline void prepare_config(WalkConfig& config) {
  if (has_custom_coin(config) && !config.custom_matrix) {
    config.custom_matrix = load_matrix_json(custom_coin_path(config), config.dim);
  }
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing output file: " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace detail

// run: evolve once, emit distribution.csv and summary.json.
inline void cmd_run(const WalkConfig& config, const std::filesystem::path& out_dir) {
  const WalkState state = config.dressed ? run_dressed(config) : run(config);
  const Distribution dist = position_distribution(state);

  std::ostringstream csv;
  write_distribution_csv(csv, dist);
  detail::write_text_file(out_dir / "distribution.csv", csv.str());

  const auto [lo, hi] = support_bounds(dist);
  nlohmann::ordered_json summary;
  summary["config"] = config_json(config);
  summary["norm"] = state.norm();
  summary["sigma"] = sigma(dist);
  summary["support"] = {{"min", std::vector<int>(lo.coords().begin(), lo.coords().end())},
                        {"max", std::vector<int>(hi.coords().begin(), hi.coords().end())}};
  summary["versions"] = version_json();
  detail::write_json_file(out_dir / "summary.json", summary);
}

// sweep: sigma after every step, emit sigma_series.csv and regression.json.
inline void cmd_sweep(const WalkConfig& config, const std::filesystem::path& out_dir) {
  const SigmaSeries series = sigma_series(config);
  const RegressionResult fit = regress_sigma(series, config.t_min);

  std::ostringstream csv;
  write_sigma_csv(csv, series);
  detail::write_text_file(out_dir / "sigma_series.csv", csv.str());

  nlohmann::ordered_json reg;
  reg["config"] = config_json(config);
  reg["slope"] = fit.slope;
  reg["intercept"] = fit.intercept;
  reg["stderr_slope"] = fit.stderr_slope;
  reg["t_min"] = fit.t_min;
  reg["versions"] = version_json();
  detail::write_json_file(out_dir / "regression.json", reg);
}

// ensemble: average dressed trials, emit avg_distribution.csv and
// convergence.json with the distance to the exact binomial law.
inline void cmd_ensemble(const WalkConfig& config, const std::filesystem::path& out_dir) {
  const Distribution avg = ensemble_average(config, config.trials, config.seed);
  const Distribution reference = binomial_distribution(config.dim, config.steps);

  std::ostringstream csv;
  write_distribution_csv(csv, avg);
  detail::write_text_file(out_dir / "avg_distribution.csv", csv.str());

  nlohmann::ordered_json conv;
  conv["config"] = config_json(config);
  conv["total_variation_to_binomial"] = total_variation(avg, reference);
  conv["ensemble_sigma"] = sigma(avg);
  conv["classical_sigma"] = std::sqrt(static_cast<double>(config.dim) * config.steps);
  conv["versions"] = version_json();
  detail::write_json_file(out_dir / "convergence.json", conv);
}

// oracle-check: state-vector engine vs brute-force path sum.  Returns 0 on
// agreement within tol::kOracleAgreement, 1 otherwise.
inline int cmd_oracle_check(const WalkConfig& config, std::ostream& report) {
  if (config.dressed) {
    throw std::invalid_argument("oracle-check needs a deterministic coin; "
                                "use a custom matrix for fixed-phase checks");
  }
  const WalkState engine = run(config);
  const WalkState reference = path_sum_oracle(config);
  const double deviation = max_amplitude_deviation(engine, reference);
  const bool pass = deviation <= tol::kOracleAgreement;
  report << "max amplitude deviation " << format_double(deviation) << " (tolerance "
         << format_double(tol::kOracleAgreement) << "): " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

}  // namespace qwalk
