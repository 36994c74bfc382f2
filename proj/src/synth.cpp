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

#include "qunfold/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace qunfold {

namespace {

int round_half_away(double x) {
  return static_cast<int>(std::lround(x));  // lround rounds halves away from 0
}

void check_values_in_range(const IntegerSample& sample) {
  for (int v : sample.values) {
    if (v < sample.lo || v > sample.hi) {
      throw BadRangeError("value " + std::to_string(v) + " outside [" +
                          std::to_string(sample.lo) + ", " +
                          std::to_string(sample.hi) + "]");
    }
  }
}

}  // namespace

IntegerSample clipped_normal_integers(std::size_t n, double sigma, int lo,
                                      int hi, std::uint64_t seed) {
  if (sigma <= 0.0) throw Error("sigma must be positive");
  if (lo >= hi) throw BadRangeError("bin range must satisfy lo < hi");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  IntegerSample sample;
  sample.lo = lo;
  sample.hi = hi;
  sample.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double clipped = std::clamp(normal(rng), static_cast<double>(lo),
                                      static_cast<double>(hi));
    sample.values.push_back(round_half_away(clipped));
  }
  return sample;
}

IntegerSample threshold_noise_with_draws(const IntegerSample& truth,
                                         std::span<const double> draws) {
  if (truth.lo != -10 || truth.hi != 10) {
    throw BadRangeError("threshold noise is defined on bin_range [-10, 10]");
  }
  check_values_in_range(truth);
  if (draws.size() != truth.values.size()) {
    throw Error("need one draw per value: " +
                std::to_string(truth.values.size()) + " values, " +
                std::to_string(draws.size()) + " draws");
  }
  IntegerSample out = truth;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const int v = truth.values[k];
    const double u = draws[k];
    if (v == -10 && u < 0.2) {
      out.values[k] = v + 1;
    } else if (v == 10 && u < 0.3) {
      out.values[k] = v - 1;
    } else if (std::abs(v) < 10 && u < 0.2) {
      out.values[k] = v - 1;
    } else if (std::abs(v) < 10 && u < 0.8) {
      out.values[k] = v + 1;
    }
  }
  return out;
}

IntegerSample threshold_noise(const IntegerSample& truth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> draws(truth.values.size());
  for (double& u : draws) u = uniform(rng);
  return threshold_noise_with_draws(truth, draws);
}

Eigen::MatrixXd tridiagonal_response(int bins) {
  if (bins < 2) throw Error("tridiagonal response needs at least 2 bins");
  Eigen::MatrixXd response = Eigen::MatrixXd::Zero(bins, bins);
  for (int i = 1; i + 1 < bins; ++i) {
    response(i, i) = 0.5;
    response(i, i - 1) = 0.25;
    response(i, i + 1) = 0.25;
  }
  response(0, 0) = 0.75;
  response(0, 1) = 0.25;
  response(bins - 1, bins - 1) = 0.75;
  response(bins - 1, bins - 2) = 0.25;
  return response;
}

std::vector<double> uniform_edges(double lo, double hi, int bins) {
  if (bins < 1 || !(lo < hi)) throw Error("bad histogram edge request");
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  }
  return edges;
}

Histogram histogram(const IntegerSample& sample,
                    const std::vector<double>& edges) {
  if (edges.size() < 2) throw Error("need at least two edges");
  for (std::size_t b = 1; b < edges.size(); ++b) {
    if (!(edges[b - 1] < edges[b])) {
      throw Error("histogram edges must be strictly increasing");
    }
  }
  const auto bins = static_cast<Eigen::Index>(edges.size() - 1);
  Histogram h;
  h.edges = edges;
  h.counts = Eigen::VectorXd::Zero(bins);
  for (int v : sample.values) {
    const double x = static_cast<double>(v);
    if (x < edges.front() || x > edges.back()) continue;
    if (x == edges.back()) {  // last bin is right-closed
      h.counts[bins - 1] += 1.0;
      continue;
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    h.counts[static_cast<Eigen::Index>(it - edges.begin()) - 1] += 1.0;
  }
  return h;
}

void save_sample(const IntegerSample& sample,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (int v : sample.values) out << v << "\n";
}

IntegerSample load_sample(const std::filesystem::path& path, int lo, int hi) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  IntegerSample sample;
  sample.lo = lo;
  sample.hi = hi;
  int v = 0;
  while (in >> v) sample.values.push_back(v);
  check_values_in_range(sample);
  return sample;
}

void save_histogram_csv(const Histogram& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "lo,hi,count\n";
  char buf[96];
  for (Eigen::Index b = 0; b < h.counts.size(); ++b) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g",
                  h.edges[static_cast<std::size_t>(b)],
                  h.edges[static_cast<std::size_t>(b) + 1], h.counts[b]);
    out << buf << "\n";
  }
}

Histogram load_histogram_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  bool header_seen = false;
  std::vector<double> lo, hi, counts;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("lo,", 0) != 0) {
        throw IoError(path.string() + ": expected `lo,hi,count` header");
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    double vals[3];
    for (double& v : vals) {
      if (!std::getline(row, field, ',')) {
        throw IoError(path.string() + ": malformed row \"" + line + "\"");
      }
      try {
        v = std::stod(field);
      } catch (const std::exception&) {
        throw IoError(path.string() + ": bad number \"" + field + "\"");
      }
    }
    lo.push_back(vals[0]);
    hi.push_back(vals[1]);
    counts.push_back(vals[2]);
  }
  if (counts.empty()) throw IoError(path.string() + ": no histogram rows");
  Histogram h;
  h.edges = lo;
  h.edges.push_back(hi.back());
  h.counts = Eigen::Map<Eigen::VectorXd>(counts.data(),
                                         static_cast<Eigen::Index>(counts.size()));
  for (std::size_t b = 0; b + 1 < hi.size(); ++b) {
    if (hi[b] != lo[b + 1]) {
      throw IoError(path.string() + ": bins are not contiguous");
    }
  }
  return h;
}

}  // namespace qunfold
