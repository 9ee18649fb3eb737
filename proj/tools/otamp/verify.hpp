// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace otamp::cli {

struct CheckRow {
  std::string name;
  double value;
  double bound;
  bool ok;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRow> rows;
  bool ok() const;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed);
std::string render(const std::vector<SuiteResult>& results);

}  // namespace otamp::cli
