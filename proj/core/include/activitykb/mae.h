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

#ifndef ACTIVITYKB_MAE_H_
#define ACTIVITYKB_MAE_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace akb {

// Label -> percentage; a valid distribution sums to 100.
using Distribution = std::map<std::string, double>;

inline constexpr double kDistributionTolerance = 1e-6;

// Throws Error(kInvalidArgument) for negative or non-finite entries and for
// totals more than 1e-6 away from 100. `name` appears in the message.
void ValidateDistribution(const Distribution& d, std::string_view name);

// Mean absolute error over the union of labels, missing labels counting 0.
double ComputeMae(const Distribution& predicted, const Distribution& reference);

// A JSON object of label -> number.
Distribution ParseDistribution(std::string_view json);
Distribution LoadDistribution(const std::filesystem::path& path);

}  // namespace akb

#endif  // ACTIVITYKB_MAE_H_
