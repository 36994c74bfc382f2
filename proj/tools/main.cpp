// Copyright 2026 The qunfold authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line pipeline: calibrate -> gen-truth -> distort -> unfold ->
// report, plus a self-contained demo. Every artifact embeds the master
// seed and a hash of the resolved configuration, so re-running a command
// with the same inputs reproduces its outputs byte for byte.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "qunfold/calibration.hpp"
#include "qunfold/core.hpp"
#include "qunfold/device_samples.hpp"
#include "qunfold/sampling.hpp"
#include "qunfold/statesim.hpp"
#include "qunfold/synth.hpp"
#include "qunfold/unfold.hpp"

namespace {

using namespace qunfold;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------

// Either a quantum count vector (power-of-two, labeled) or a synthetic
// histogram (arbitrary bin count with explicit edges).
struct VectorTable {
  Eigen::VectorXd values;
  std::optional<int> n_qubits;
  std::vector<double> edges;  // set iff synthetic

  Eigen::Index size() const { return values.size(); }
};

VectorTable table_from_counts(const CountVector& counts) {
  return VectorTable{counts.counts(), counts.n_qubits(), {}};
}

VectorTable load_vector_table(const fs::path& path) {
  std::ifstream probe(path);
  if (!probe) throw IoError("cannot open " + path.string());
  std::string line;
  while (std::getline(probe, line)) {
    if (line.empty() || line[0] == '#') continue;
    break;
  }
  if (line.rfind("lo,", 0) == 0) {
    const Histogram h = load_histogram_csv(path);
    return VectorTable{h.counts, std::nullopt, h.edges};
  }
  return table_from_counts(load_counts(path));
}

void save_vector_table(const VectorTable& table, const fs::path& path,
                       const ArtifactMeta& meta) {
  if (table.n_qubits) {
    save_counts_csv(CountVector(*table.n_qubits, table.values), path, meta);
    return;
  }
  // Histogram CSV with the reproducibility comments up front.
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (meta.seed) out << "# seed=" << *meta.seed << "\n";
  if (meta.config_hash) out << "# config=" << *meta.config_hash << "\n";
  out.close();
  // Append the histogram body.
  Histogram h{table.edges, table.values};
  const fs::path tmp = path.string() + ".body";
  save_histogram_csv(h, tmp);
  std::ofstream app(path, std::ios::app);
  std::ifstream body(tmp);
  app << body.rdbuf();
  body.close();
  fs::remove(tmp);
}

std::string bin_label(const VectorTable& table, Eigen::Index i) {
  if (table.n_qubits) {
    return index_to_label(
        BasisIndex(static_cast<std::uint64_t>(i), *table.n_qubits),
        BitOrdering::kQ0Msb);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "[%g;%g)",
                table.edges[static_cast<std::size_t>(i)],
                table.edges[static_cast<std::size_t>(i) + 1]);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

// The resolved parameters of one command invocation, hashed into every
// artifact the command writes.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;

  void add(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
  }
  void add(const std::string& key, std::int64_t value) {
    add(key, std::to_string(value));
  }

  std::string hash() const {
    std::string canon = command + "\n";
    canon += "seed=" + std::to_string(seed) + "\n";
    for (const auto& [k, v] : params) canon += k + "=" + v + "\n";
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(canon));
    return buf;
  }

  ArtifactMeta meta() const { return ArtifactMeta{seed, hash()}; }

  void write_run_meta(const fs::path& out_dir) const {
    nlohmann::json doc;
    doc["command"] = command;
    doc["seed"] = seed;
    doc["config"] = hash();
    nlohmann::json p;
    for (const auto& [k, v] : params) p[k] = v;
    doc["params"] = p;
    std::ofstream out(out_dir / "run_meta.json");
    if (!out) throw IoError("cannot write run_meta.json");
    out << doc.dump(2) << "\n";
  }
};

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + out);
  return dir;
}

// Channel specs: identity | tensor[:seed] | tridiag:<B> | file:<path>.
// `dim_hint` sizes the identity channel (any bin count); `qubits_hint`
// sizes the per-qubit tensor channel.
Eigen::MatrixXd build_channel_matrix(const std::string& spec,
                                     Eigen::Index dim_hint, int qubits_hint,
                                     std::uint64_t master_seed,
                                     RunConfig& config) {
  config.add("channel", spec);
  if (spec == "identity") {
    if (dim_hint < 1) throw BadSourceError("identity channel needs a sized input");
    return Eigen::MatrixXd::Identity(dim_hint, dim_hint);
  }
  if (spec.rfind("tensor", 0) == 0) {
    if (qubits_hint < 1) {
      throw BadSourceError(
          "tensor channel needs a qubit register (quantum input or --qubits)");
    }
    std::uint64_t factor_seed = derive_seed(master_seed, 0x7e25);
    if (spec.size() > 7 && spec[6] == ':') {
      factor_seed = std::stoull(spec.substr(7));
    } else if (spec != "tensor") {
      throw BadSourceError("bad channel spec \"" + spec + "\"");
    }
    config.add("channel_factor_seed", static_cast<std::int64_t>(factor_seed));
    return tensor_response(random_qubit_factors(qubits_hint, factor_seed))
        .entries();
  }
  if (spec.rfind("tridiag:", 0) == 0) {
    return tridiagonal_response(std::stoi(spec.substr(8)));
  }
  if (spec.rfind("file:", 0) == 0) {
    return load_matrix_csv(spec.substr(5));
  }
  throw BadSourceError("unknown channel spec \"" + spec + "\"");
}

ResponseMatrix as_response(const Eigen::MatrixXd& matrix, int qubits) {
  return ResponseMatrix(qubits, matrix, ResponseMatrix::kLoadTolerance);
}

// Priors: uniform | tent | triangular | file:<path>.
Eigen::VectorXd build_prior(const std::string& spec, Eigen::Index dim) {
  if (spec == "uniform") return Eigen::VectorXd::Ones(dim);
  if (spec == "tent" || spec == "triangular") {
    Eigen::VectorXd prior(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto r = static_cast<double>(std::min(i, dim - 1 - i));
      prior[i] = spec == "tent" ? r : r * (r + 1) / 2;
    }
    return prior;
  }
  if (spec.rfind("file:", 0) == 0) {
    return load_vector_table(spec.substr(5)).values;
  }
  throw BadSourceError("unknown prior spec \"" + spec + "\"");
}

void check_dims(const VectorTable& table, const Eigen::MatrixXd& channel) {
  if (channel.rows() != channel.cols() || channel.cols() != table.size()) {
    throw DimensionMismatchError(
        "channel is " + std::to_string(channel.rows()) + "x" +
        std::to_string(channel.cols()) + " but the vector has " +
        std::to_string(table.size()) + " bins");
  }
}

// ---------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------

struct CalibrateArgs {
  int qubits = 0;
  std::string channel = "tensor";
  std::int64_t shots = 8192;
  std::uint64_t seed = 12345;
  std::int64_t batch_size = 0;  // 0 = single batch
  std::string out;
};

int run_calibrate(const CalibrateArgs& args) {
  RunConfig config{"calibrate", args.seed, {}};
  config.add("qubits", args.qubits);
  config.add("shots", args.shots);
  config.add("batch_size", args.batch_size);

  const auto dir = ensure_out_dir(args.out);
  const Eigen::MatrixXd channel_matrix = build_channel_matrix(
      args.channel, static_cast<Eigen::Index>(basis_dimension(args.qubits)),
      args.qubits, args.seed, config);
  const ResponseMatrix true_channel = as_response(channel_matrix, args.qubits);

  const auto plan = make_calibration_plan(args.qubits);
  const auto total = static_cast<std::uint64_t>(plan.circuits.size());
  CalibrationRun run(args.qubits, static_cast<double>(args.shots));
  const std::uint64_t batch =
      args.batch_size > 0 ? static_cast<std::uint64_t>(args.batch_size)
                          : total;
  for (std::uint64_t start = 0; start < total; start += batch) {
    run = merge_runs(run, run_plan_through_channel(plan, true_channel,
                                                   args.shots, args.seed,
                                                   start, batch));
  }

  const auto response = assemble_response(run);
  save_response_csv(response, dir / "response.csv", config.meta());
  save_heatmap_csv(response, dir / "heatmap.csv");
  save_calibration_run(run, dir / "calibration_run", args.seed);
  config.write_run_meta(dir);
  std::printf("calibrated %d qubits (%" PRId64
              " shots/circuit, %zu circuits) -> %s\n",
              args.qubits, args.shots, plan.circuits.size(),
              (dir / "response.csv").c_str());
  return 0;
}

struct GenTruthArgs {
  std::string source = "uniform";
  std::string circuit;  // convenience spelling of --source circuit:<path>
  int qubits = 5;
  std::int64_t shots = 8192;
  bool sampled = false;
  std::uint64_t seed = 12345;
  double sigma = 3.0;
  std::int64_t ndata = 10000;
  int bins = 21;
  std::string out;
};

int run_gen_truth(const GenTruthArgs& raw_args) {
  GenTruthArgs args = raw_args;
  if (!args.circuit.empty()) args.source = "circuit:" + args.circuit;
  RunConfig config{"gen-truth", args.seed, {}};
  config.add("source", args.source);
  const auto dir = ensure_out_dir(args.out);

  VectorTable table;
  if (args.source == "uniform") {
    config.add("qubits", args.qubits);
    config.add("shots", args.shots);
    const auto dim = static_cast<Eigen::Index>(basis_dimension(args.qubits));
    table.values = Eigen::VectorXd::Constant(
        dim, static_cast<double>(args.shots) / static_cast<double>(dim));
    table.n_qubits = args.qubits;
  } else if (args.source == "gaussian" ||
             args.source.rfind("circuit:", 0) == 0) {
    config.add("shots", args.shots);
    config.add("sampled", args.sampled ? 1 : 0);
    StateVector state(1);
    if (args.source == "gaussian") {
      config.add("qubits", args.qubits);
      state = initialize_amplitudes(gaussian_amplitudes(args.qubits));
    } else {
      state = run_circuit(load_circuit(args.source.substr(8)));
    }
    const CountVector probs = exact_probabilities(state);
    const CountVector counts =
        args.sampled
            ? sample_counts(probs, args.shots, args.seed)
            : CountVector(probs.n_qubits(),
                          probs.counts() * static_cast<double>(args.shots));
    table = table_from_counts(counts);
  } else if (args.source == "clipped-normal") {
    config.add("ndata", args.ndata);
    config.add("bins", args.bins);
    char sigma_text[32];
    std::snprintf(sigma_text, sizeof(sigma_text), "%g", args.sigma);
    config.add("sigma", sigma_text);
    const auto sample = clipped_normal_integers(
        static_cast<std::size_t>(args.ndata), args.sigma, -10, 10, args.seed);
    const Histogram h = histogram(sample, uniform_edges(-10.5, 10.5, args.bins));
    save_sample(sample, dir / "truth_sample.txt");
    table.values = h.counts;
    table.edges = h.edges;
  } else if (args.source.rfind("file:", 0) == 0) {
    table = load_vector_table(args.source.substr(5));
  } else {
    throw BadSourceError("unknown truth source \"" + args.source + "\"");
  }

  save_vector_table(table, dir / "truth.csv", config.meta());
  config.write_run_meta(dir);
  std::printf("truth (%s, %lld bins) -> %s\n", args.source.c_str(),
              static_cast<long long>(table.size()),
              (dir / "truth.csv").c_str());
  return 0;
}

struct DistortArgs {
  std::string truth;
  std::string channel;
  std::int64_t shots = 8192;
  std::uint64_t seed = 12345;
  std::string out;
};

int run_distort(const DistortArgs& args) {
  RunConfig config{"distort", args.seed, {}};
  config.add("truth", args.truth);
  config.add("shots", args.shots);
  const auto dir = ensure_out_dir(args.out);

  VectorTable table = load_vector_table(args.truth);
  const Eigen::MatrixXd channel =
      build_channel_matrix(args.channel, table.size(),
                           table.n_qubits.value_or(0), args.seed, config);
  check_dims(table, channel);

  table.values =
      apply_channel_and_sample(table.values, channel, args.shots, args.seed);
  save_vector_table(table, dir / "measured.csv", config.meta());
  config.write_run_meta(dir);
  std::printf("distorted %s through %s -> %s\n", args.truth.c_str(),
              args.channel.c_str(), (dir / "measured.csv").c_str());
  return 0;
}

struct UnfoldArgs {
  std::string measured;
  std::string channel;
  std::vector<std::string> methods{"ibu"};
  int ibu_iters = 1;  // one iteration is where readout unfolding works best
  std::string prior = "uniform";
  double tolerance = 1e-6;
  std::int64_t max_steps = 200000;
  std::uint64_t seed = 12345;
  std::string background;
  std::string out;
};

int run_unfold(const UnfoldArgs& args) {
  RunConfig config{"unfold", args.seed, {}};
  config.add("measured", args.measured);
  const auto dir = ensure_out_dir(args.out);

  const VectorTable table = load_vector_table(args.measured);
  const Eigen::MatrixXd channel = build_channel_matrix(
      args.channel, table.size(), table.n_qubits.value_or(0), args.seed,
      config);
  check_dims(table, channel);

  std::optional<Eigen::VectorXd> background;
  if (!args.background.empty()) {
    config.add("background", args.background);
    background = load_vector_table(args.background).values;
  }

  for (const std::string& method : args.methods) {
    RunConfig method_config = config;
    method_config.add("method", method);
    UnfoldResult result;
    if (method == "mi") {
      result = matrix_inversion(table.values, channel, background);
      if (result.ill_conditioned) {
        std::fprintf(stderr,
                     "warning: response condition estimate %.3g; the "
                     "inversion may be dominated by noise\n",
                     result.condition_estimate);
      }
    } else if (method == "ibu") {
      method_config.add("iterations", args.ibu_iters);
      method_config.add("prior", args.prior);
      result = ibu(table.values, build_prior(args.prior, table.size()),
                   channel, args.ibu_iters, background);
    } else if (method == "cls") {
      char tol_text[32];
      std::snprintf(tol_text, sizeof(tol_text), "%g", args.tolerance);
      method_config.add("tolerance", tol_text);
      method_config.add("max_steps", args.max_steps);
      result = constrained_ls(
          table.values, channel,
          ConstrainedLsOptions{args.tolerance,
                               static_cast<int>(args.max_steps), args.seed},
          background);
    } else {
      throw BadSourceError("unknown method \"" + method +
                           "\" (expected mi|ibu|cls)");
    }

    nlohmann::json doc = unfold_result_to_json(result);
    doc["seed"] = args.seed;
    doc["config"] = method_config.hash();
    const fs::path out_path = dir / ("result_" + method + ".json");
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path.string());
    out << doc.dump(2) << "\n";
    std::printf("%s: %lld bins, %d negative, total delta %.6g -> %s\n",
                method.c_str(), static_cast<long long>(result.t_hat.size()),
                result.negative_bins, result.total_delta, out_path.c_str());
  }
  config.write_run_meta(dir);
  return 0;
}

struct ReportArgs {
  std::string truth;
  std::string measured;
  std::vector<std::string> results;
  std::string out;
};

int run_report(const ReportArgs& args) {
  RunConfig config{"report", 0, {}};
  config.add("truth", args.truth);
  config.add("measured", args.measured);
  const auto dir = ensure_out_dir(args.out);

  const VectorTable truth = load_vector_table(args.truth);
  const VectorTable measured = load_vector_table(args.measured);
  if (truth.size() != measured.size()) {
    throw DimensionMismatchError("truth and measured tables differ in size");
  }

  std::vector<std::pair<std::string, UnfoldResult>> methods;
  for (const auto& result_path : args.results) {
    config.add("result", result_path);
    std::ifstream in(result_path);
    if (!in) throw IoError("cannot open " + result_path);
    nlohmann::json doc;
    in >> doc;
    auto result = unfold_result_from_json(doc);
    if (result.t_hat.size() != truth.size()) {
      throw DimensionMismatchError("result " + result_path +
                                   " does not match the truth table");
    }
    std::string name = result.method;
    for (const auto& [existing, unused] : methods) {
      if (existing == name) name += "_2";
    }
    methods.emplace_back(name, std::move(result));
  }

  const fs::path out_path = dir / "report.csv";
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write " + out_path.string());
  const auto meta = config.meta();
  out << "# config=" << *meta.config_hash << "\n";
  out << "bin,label,t,m";
  for (const auto& [name, unused] : methods) out << "," << name;
  for (const auto& [name, unused] : methods) out << ",ratio_" << name;
  out << "\n";

  char buf[40];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
  };
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    out << i << "," << bin_label(truth, i) << "," << num(truth.values[i])
        << "," << num(measured.values[i]);
    for (const auto& [unused, result] : methods) {
      out << "," << num(result.t_hat[i]);
    }
    for (const auto& [unused, result] : methods) {
      // Ratio convention: 1 wherever the truth bin is empty.
      const double ratio =
          truth.values[i] > 0.0 ? result.t_hat[i] / truth.values[i] : 1.0;
      out << "," << num(ratio);
    }
    out << "\n";
  }
  // Summary rows: L2 distance to truth and negative-bin counts.
  out << "L2,,," << num((measured.values - truth.values).norm());
  for (const auto& [unused, result] : methods) {
    out << "," << num(compare_to_truth(result.t_hat, truth.values).l2_distance);
  }
  for (std::size_t k = 0; k < methods.size(); ++k) out << ",";
  out << "\n";
  out << "negative_bins,,,"
      << (measured.values.array() < 0.0).count();
  for (const auto& [unused, result] : methods) {
    out << "," << result.negative_bins;
  }
  for (std::size_t k = 0; k < methods.size(); ++k) out << ",";
  out << "\n";

  config.write_run_meta(dir);
  std::printf("report (%zu methods) -> %s\n", methods.size(),
              out_path.c_str());
  return 0;
}

// Runs the two-qubit Bell-pair example end to end on bundled device data
// and prints the numbers each method produces.
int run_demo(const std::string& out) {
  const ResponseMatrix response = sample_response_2q();
  const Eigen::VectorXd m = sample_bell_measurement();
  const Eigen::VectorXd truth = (Eigen::VectorXd(4) << 0, 4000, 4000, 0)
                                    .finished();

  std::printf("response (column-stochastic, P(measured|true)):\n");
  for (Eigen::Index i = 0; i < 4; ++i) {
    std::printf("  [%9.6f %9.6f %9.6f %9.6f]\n", response(i, 0),
                response(i, 1), response(i, 2), response(i, 3));
  }

  const auto mi = matrix_inversion(m, response.entries());
  std::printf("\ndet = %.5f, condition estimate = %.2f\n", mi.determinant,
              mi.condition_estimate);
  std::printf("measured m            = [%8.0f %8.0f %8.0f %8.0f]\n", m[0],
              m[1], m[2], m[3]);
  std::printf("truth t               = [%8.0f %8.0f %8.0f %8.0f]\n", truth[0],
              truth[1], truth[2], truth[3]);
  std::printf("inversion estimate    = [%8.3f %8.3f %8.3f %8.3f]  (%d "
              "negative bin%s)\n",
              mi.t_hat[0], mi.t_hat[1], mi.t_hat[2], mi.t_hat[3],
              mi.negative_bins, mi.negative_bins == 1 ? "" : "s");

  std::printf("\niterative Bayes, uniform prior:\n");
  std::vector<std::pair<int, UnfoldResult>> ibu_rows;
  for (int n : {1, 5, 10, 100, 1000}) {
    ibu_rows.emplace_back(
        n, ibu(m, Eigen::VectorXd::Ones(4), response.entries(), n));
  }
  for (const auto& [n, result] : ibu_rows) {
    std::printf("  n=%-5d -> [%8.3f %8.3f %8.3f %8.3f]\n", n, result.t_hat[0],
                result.t_hat[1], result.t_hat[2], result.t_hat[3]);
  }

  std::printf("iterative Bayes, truth-shaped prior [0,1,1,0]:\n");
  const Eigen::VectorXd shaped = (Eigen::VectorXd(4) << 0, 1, 1, 0).finished();
  for (int n : {1, 10}) {
    const auto result = ibu(m, shaped, response.entries(), n);
    std::printf("  n=%-5d -> [%8.3f %8.3f %8.3f %8.3f]\n", n, result.t_hat[0],
                result.t_hat[1], result.t_hat[2], result.t_hat[3]);
  }

  const auto cls =
      constrained_ls(m, response.entries(), ConstrainedLsOptions{1e-9});
  std::printf("\nconstrained least squares = [%8.3f %8.3f %8.3f %8.3f]  "
              "(objective %.4f)\n",
              cls.t_hat[0], cls.t_hat[1], cls.t_hat[2], cls.t_hat[3],
              cls.objective);

  if (!out.empty()) {
    RunConfig config{"demo", 0, {}};
    const auto dir = ensure_out_dir(out);
    save_response_csv(response, dir / "response.csv", config.meta());
    save_counts_csv(CountVector(2, truth), dir / "truth.csv", config.meta());
    save_counts_csv(CountVector(2, m), dir / "measured.csv", config.meta());
    for (const auto* result : {&mi, &cls}) {
      std::ofstream json_out(dir / ("result_" + result->method + ".json"));
      json_out << unfold_result_to_json(*result).dump(2) << "\n";
    }
    for (const auto& [n, result] : ibu_rows) {
      std::ofstream json_out(dir /
                             ("result_ibu_n" + std::to_string(n) + ".json"));
      json_out << unfold_result_to_json(result).dump(2) << "\n";
    }
    config.write_run_meta(dir);
    std::printf("\nartifacts -> %s\n", dir.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Readout-error mitigation by histogram unfolding: build "
               "response matrices, distort truth spectra through them, and "
               "recover the truth by matrix inversion, iterative Bayes, or "
               "constrained least squares."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Flat key=value config file (keys are "
                 "`subcommand.option`); command-line flags win");

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand(
      "calibrate", "Simulate basis-state calibration circuits through a "
                   "channel and assemble the response matrix");
  cal_cmd->add_option("--qubits", cal.qubits, "Register width")->required();
  cal_cmd->add_option("--channel", cal.channel,
                      "identity | tensor[:seed] | tridiag:<B> | file:<path>");
  cal_cmd->add_option("--shots", cal.shots, "Shots per calibration circuit");
  cal_cmd->add_option("--seed", cal.seed, "Master seed");
  cal_cmd->add_option("--batch-size", cal.batch_size,
                      "Circuits per batch (0 = all in one batch)");
  cal_cmd->add_option("--out", cal.out, "Output directory")->required();

  GenTruthArgs gen;
  auto* gen_cmd =
      app.add_subcommand("gen-truth", "Generate a truth histogram");
  gen_cmd->add_option(
      "--source", gen.source,
      "uniform | gaussian | circuit:<path> | clipped-normal | file:<path>");
  gen_cmd->add_option("--circuit", gen.circuit,
                      "Circuit file; shorthand for --source circuit:<path>");
  gen_cmd->add_option("--qubits", gen.qubits, "Register width");
  gen_cmd->add_option("--shots", gen.shots, "Total counts in the truth");
  gen_cmd->add_flag("--sampled", gen.sampled,
                    "Sample the counts instead of writing exact expectations");
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--sigma", gen.sigma, "Clipped-normal width");
  gen_cmd->add_option("--ndata", gen.ndata, "Clipped-normal sample size");
  gen_cmd->add_option("--bins", gen.bins,
                      "Clipped-normal histogram bins over [-10.5, 10.5]");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  DistortArgs dis;
  auto* dis_cmd = app.add_subcommand(
      "distort", "Fold a truth histogram through a channel and sample "
                 "measured counts");
  dis_cmd->add_option("--truth", dis.truth, "Truth CSV")->required();
  dis_cmd->add_option("--channel", dis.channel,
                      "identity | tensor[:seed] | tridiag:<B> | file:<path>")
      ->required();
  dis_cmd->add_option("--shots", dis.shots, "Measured shots");
  dis_cmd->add_option("--seed", dis.seed, "Master seed");
  dis_cmd->add_option("--out", dis.out, "Output directory")->required();

  UnfoldArgs unf;
  auto* unf_cmd =
      app.add_subcommand("unfold", "Unfold measured counts with one or more "
                                   "methods");
  unf_cmd->add_option("--measured", unf.measured, "Measured CSV")->required();
  unf_cmd->add_option("--response", unf.channel,
                      "identity | tensor[:seed] | tridiag:<B> | file:<path>")
      ->required();
  unf_cmd->add_option("--method", unf.methods, "mi | ibu | cls (repeatable)");
  unf_cmd->add_option("--ibu-iters", unf.ibu_iters, "Bayes iterations");
  unf_cmd->add_option("--prior", unf.prior,
                      "uniform | tent | triangular | file:<path>");
  unf_cmd->add_option("--tol", unf.tolerance,
                      "Constrained-LS objective tolerance");
  unf_cmd->add_option("--max-steps", unf.max_steps, "Constrained-LS step cap");
  unf_cmd->add_option("--seed", unf.seed, "Master seed");
  unf_cmd->add_option("--beta", unf.background,
                      "Background CSV subtracted from the measurement");
  unf_cmd->add_option("--out", unf.out, "Output directory")->required();

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand(
      "report", "Flatten truth, measurement and unfolded results into one "
                "comparison table");
  rep_cmd->add_option("--truth", rep.truth, "Truth CSV")->required();
  rep_cmd->add_option("--measured", rep.measured, "Measured CSV")->required();
  rep_cmd->add_option("--result", rep.results,
                      "Unfold result JSON (repeatable)");
  rep_cmd->add_option("--out", rep.out, "Output directory")->required();

  std::string demo_out;
  auto* demo_cmd = app.add_subcommand(
      "demo", "Run the bundled two-qubit Bell example end to end");
  demo_cmd->add_option("--out", demo_out, "Optional artifact directory");

  try {
    app.parse(argc, argv);
    if (*cal_cmd) return run_calibrate(cal);
    if (*gen_cmd) return run_gen_truth(gen);
    if (*dis_cmd) return run_distort(dis);
    if (*unf_cmd) return run_unfold(unf);
    if (*rep_cmd) return run_report(rep);
    if (*demo_cmd) return run_demo(demo_out);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const SingularMatrixError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const NoConvergenceError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const BadDistributionError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
