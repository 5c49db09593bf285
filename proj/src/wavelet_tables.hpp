// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <string>
#include <vector>

namespace emgclean::detail {

struct FilterTable {
  std::string name;
  std::vector<double> lowpass;
};

const std::vector<FilterTable>& filter_tables();

}  // namespace emgclean::detail
