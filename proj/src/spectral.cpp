// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

#include "emgclean/error.hpp"

namespace emgclean {

namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

}  // namespace

std::vector<std::complex<double>> forward_rfft(std::span<const double> x) {
  if (x.empty()) throw ParameterError("cannot transform an empty sequence");
  const int n = static_cast<int>(x.size());
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size() / 2 + 1);
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  return out;
}

std::vector<double> inverse_rfft(std::span<const std::complex<double>> bins, std::size_t n) {
  if (n == 0 || bins.size() != n / 2 + 1) {
    throw ParameterError("bin count does not match the requested length");
  }
  // c2r destroys its input.
  std::vector<std::complex<double>> in(bins.begin(), bins.end());
  std::vector<double> out(n);
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                    out.data(), FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  const double scale = 1.0 / static_cast<double>(n);
  std::transform(out.begin(), out.end(), out.begin(), [scale](double v) { return v * scale; });
  return out;
}

}  // namespace emgclean
