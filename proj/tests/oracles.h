// msrf/oracles.h

// Copyright 2026 The msrf Authors.
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

// Slow, obviously-correct reference implementations used by the tests.
// Nothing here shares code with the library.

#ifndef MSRF_TESTS_ORACLES_H_
#define MSRF_TESTS_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace oracle {

/// |sum_t x[t] e^{-2 pi i k t / n}|^2 / n for k = 0..n/2, x zero-padded to n.
inline std::vector<double> dft_power(const std::vector<double>& x, std::size_t n) {
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < x.size() && t < n; ++t) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>(k * t % n) /
                       static_cast<double>(n);
      re += x[t] * std::cos(a);
      im += x[t] * std::sin(a);
    }
    out[k] = (re * re + im * im) / static_cast<double>(n);
  }
  return out;
}

/// Orthonormal DCT-II by direct summation.
inline std::vector<double> dct2(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      s += x[t] * std::cos(std::numbers::pi * static_cast<double>(k) *
                           (2.0 * static_cast<double>(t) + 1.0) /
                           (2.0 * static_cast<double>(n)));
    }
    const double scale = k == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                                : std::sqrt(2.0 / static_cast<double>(n));
    out[k] = s * scale;
  }
  return out;
}

inline double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

inline double hamming(std::size_t i, std::size_t n) {
  return 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n - 1));
}

/// Piecewise-linear interpolant through (k / rate, x[k]) evaluated at t
/// seconds, holding the last value past the end.
inline double lerp_at(const std::vector<double>& x, int rate, double t) {
  const double pos = t * rate;
  if (pos <= 0.0) return x.front();
  const std::size_t i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= x.size()) return x.back();
  const double f = pos - static_cast<double>(i);
  return x[i] * (1.0 - f) + x[i + 1] * f;
}

/// Posterior class probabilities of a Gaussian naive Bayes model evaluated
/// straight from the densities (no logs), for small well-scaled inputs.
struct GnbOracle {
  std::vector<std::vector<double>> mean, var;
  std::vector<double> prior;
};

inline GnbOracle fit_gnb(const std::vector<std::vector<double>>& x,
                         const std::vector<std::size_t>& y, std::size_t k,
                         double floor_var) {
  const std::size_t d = x[0].size();
  GnbOracle o;
  o.mean.assign(k, std::vector<double>(d, 0.0));
  o.var.assign(k, std::vector<double>(d, 0.0));
  o.prior.assign(k, 0.0);
  std::vector<double> cnt(k, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    cnt[y[i]] += 1;
    for (std::size_t j = 0; j < d; ++j) o.mean[y[i]][j] += x[i][j];
  }
  for (std::size_t c = 0; c < k; ++c)
    for (auto& v : o.mean[c]) v /= cnt[c];
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double e = x[i][j] - o.mean[y[i]][j];
      o.var[y[i]][j] += e * e;
    }
  for (std::size_t c = 0; c < k; ++c) {
    for (auto& v : o.var[c]) v = v / cnt[c] + floor_var;
    o.prior[c] = cnt[c] / static_cast<double>(x.size());
  }
  return o;
}

inline std::vector<double> gnb_posterior(const GnbOracle& o, const std::vector<double>& x) {
  const std::size_t k = o.prior.size();
  std::vector<double> joint(k);
  double z = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    double p = o.prior[c];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double e = x[j] - o.mean[c][j];
      p *= std::exp(-e * e / (2.0 * o.var[c][j])) /
           std::sqrt(2.0 * std::numbers::pi * o.var[c][j]);
    }
    joint[c] = p;
    z += p;
  }
  for (auto& p : joint) p /= z;
  return joint;
}

/// Central finite difference of f along coordinate i.
inline double central_diff(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> p, std::size_t i, double h) {
  const double x0 = p[i];
  p[i] = x0 + h;
  const double fp = f(p);
  p[i] = x0 - h;
  const double fm = f(p);
  return (fp - fm) / (2.0 * h);
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() /
           ("msrf_test_" + name + "_" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace oracle

#endif  // MSRF_TESTS_ORACLES_H_
