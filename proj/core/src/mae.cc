// Copyright 2026 The activitykb Authors.
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

#include "activitykb/mae.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "activitykb/errors.h"

namespace akb {

void ValidateDistribution(const Distribution& d, std::string_view name) {
  if (d.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is empty");
  double total = 0.0;
  for (const auto& [label, value] : d) {
    if (!std::isfinite(value) || value < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, std::string(name) + ": bad entry for '" +
                                                   label + "'");
    }
    total += value;
  }
  if (std::abs(total - 100.0) > kDistributionTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name << " sums to " << total << ", not 100";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

double ComputeMae(const Distribution& predicted, const Distribution& reference) {
  ValidateDistribution(predicted, "predicted");
  ValidateDistribution(reference, "reference");
  std::set<std::string> labels;
  for (const auto& [label, value] : predicted) labels.insert(label);
  for (const auto& [label, value] : reference) labels.insert(label);
  auto get = [](const Distribution& d, const std::string& label) {
    auto it = d.find(label);
    return it == d.end() ? 0.0 : it->second;
  };
  double sum = 0.0;
  for (const std::string& label : labels) {
    sum += std::abs(get(predicted, label) - get(reference, label));
  }
  return sum / static_cast<double>(labels.size());
}

Distribution ParseDistribution(std::string_view json) {
  Distribution d;
  try {
    nlohmann::json j = nlohmann::json::parse(json);
    if (!j.is_object()) throw Error(ErrorCode::kParse, "distribution must be a JSON object");
    for (const auto& [label, value] : j.items()) {
      if (!value.is_number()) {
        throw Error(ErrorCode::kParse, "distribution entry '" + label + "' is not a number");
      }
      d[label] = value.get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad distribution JSON: ") + e.what());
  }
  return d;
}

Distribution LoadDistribution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseDistribution(buffer.str());
}

}  // namespace akb
