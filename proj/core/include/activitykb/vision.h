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

#ifndef ACTIVITYKB_VISION_H_
#define ACTIVITYKB_VISION_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace akb {

struct VisionLabel {
  std::string label;  // lowercased
  double confidence = 0.0;  // [0, 1]

  bool operator==(const VisionLabel&) const = default;
};

// Exactly one of the two is set.
struct VisionRequest {
  std::string image_url;
  std::string image_bytes;
};

class VisionClient {
 public:
  virtual ~VisionClient() = default;
  virtual std::vector<VisionLabel> Classify(const VisionRequest& request) = 0;
};

// Returns fixture labels: per image URL, else the default list.
class MockVisionClient : public VisionClient {
 public:
  explicit MockVisionClient(std::vector<VisionLabel> default_labels = {},
                            std::map<std::string, std::vector<VisionLabel>> by_url = {})
      : default_labels_(std::move(default_labels)), by_url_(std::move(by_url)) {}

  std::vector<VisionLabel> Classify(const VisionRequest& request) override;

 private:
  std::vector<VisionLabel> default_labels_;
  std::map<std::string, std::vector<VisionLabel>> by_url_;
};

// POSTs {"image_url": ...} or {"image_base64": ...} to an http:// endpoint
// and expects {"labels":[{"label":..., "confidence":...}]}.
class HttpVisionClient : public VisionClient {
 public:
  explicit HttpVisionClient(std::string endpoint, double timeout_seconds = 10.0);

  std::vector<VisionLabel> Classify(const VisionRequest& request) override;

 private:
  std::string endpoint_;
  double timeout_seconds_;
};

// Parses and validates a vision response. Labels are lowercased; a
// confidence outside [0, 1] or a missing field is Error(kContract).
std::vector<VisionLabel> ParseVisionResponse(std::string_view body);

}  // namespace akb

#endif  // ACTIVITYKB_VISION_H_
