// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/fitness.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "emgclean/error.hpp"

namespace emgclean {

std::string_view to_string(FitnessMode mode) noexcept {
  return mode == FitnessMode::kLiteral ? "literal" : "oracle";
}

FitnessMode fitness_mode_from_string(std::string_view text) {
  if (text == "literal") return FitnessMode::kLiteral;
  if (text == "oracle") return FitnessMode::kOracle;
  throw ParameterError("unknown fitness mode '" + std::string(text) + "'");
}

double capped_sar(std::span<const double> d, std::span<const double> d_hat) {
  try {
    return std::min(sar(d, d_hat), kSarCapDb);
  } catch (const DegenerateError&) {
    return kSarCapDb;
  }
}

BandwidthFitness::BandwidthFitness(FitnessSpec spec)
    : spec_(std::move(spec)), filter_(&wavelet_by_name(spec_.filter_name)) {
  if (spec_.mode == FitnessMode::kOracle) {
    if (!spec_.reference) throw ParameterError("oracle fitness needs a reference signal");
    if (spec_.reference->size() != spec_.subbands.original_length) {
      throw ParameterError("reference length does not match the decomposed signal");
    }
  }
  plans_.reserve(spec_.subbands.node_count());
  for (const auto& node : spec_.subbands.nodes) {
    plans_.emplace_back(node, spec_.patch_half_width, spec_.search_half_width);
  }
}

SubbandSet BandwidthFitness::corrected(std::span<const double> lambdas) const {
  if (lambdas.size() != plans_.size()) throw ParameterError("need one bandwidth per node");
  SubbandSet out = spec_.subbands;
  for (std::size_t j = 0; j < plans_.size(); ++j) out.nodes[j] = plans_[j].apply(lambdas[j]);
  return out;
}

std::vector<double> BandwidthFitness::node_sar(std::span<const double> lambdas) const {
  if (lambdas.size() != plans_.size()) throw ParameterError("need one bandwidth per node");
  std::vector<double> out(plans_.size());
  for (std::size_t j = 0; j < plans_.size(); ++j) {
    out[j] = capped_sar(spec_.subbands.nodes[j], plans_[j].apply(lambdas[j]));
  }
  return out;
}

double BandwidthFitness::operator()(std::span<const double> lambdas) const {
  if (spec_.mode == FitnessMode::kLiteral) {
    const auto terms = node_sar(lambdas);
    return std::accumulate(terms.begin(), terms.end(), 0.0) / static_cast<double>(terms.size());
  }
  const auto recon = wpd_reconstruct(corrected(lambdas), *filter_);
  return capped_sar(spec_.reference->samples(), recon.samples());
}

double evaluate_fitness(std::span<const double> lambdas, const FitnessSpec& spec) {
  return BandwidthFitness(spec)(lambdas);
}

}  // namespace emgclean
