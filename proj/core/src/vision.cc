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

#include "activitykb/vision.h"

#include <cmath>

#include "httplib.h"
#include "json.hpp"

#include "activitykb/errors.h"
#include "activitykb/url.h"

namespace akb {

std::vector<VisionLabel> MockVisionClient::Classify(const VisionRequest& request) {
  auto it = by_url_.find(request.image_url);
  return it == by_url_.end() ? default_labels_ : it->second;
}

HttpVisionClient::HttpVisionClient(std::string endpoint, double timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
  ParseHttpUrl(endpoint_);
}

std::vector<VisionLabel> HttpVisionClient::Classify(const VisionRequest& request) {
  HttpUrl url = ParseHttpUrl(endpoint_);
  nlohmann::json body;
  if (!request.image_url.empty()) {
    body["image_url"] = request.image_url;
  } else {
    body["image_base64"] = httplib::detail::base64_encode(request.image_bytes);
  }
  httplib::Client client(url.Origin());
  client.set_url_encode(false);  // the endpoint path is already a URL
  auto timeout = std::chrono::duration<double>(timeout_seconds_);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  auto res = client.Post(url.path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kUnavailable, "vision endpoint unreachable: " + endpoint_ + " (" +
                                             httplib::to_string(res.error()) + ")");
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kUnavailable,
                "vision endpoint returned HTTP " + std::to_string(res->status));
  }
  return ParseVisionResponse(res->body);
}

std::vector<VisionLabel> ParseVisionResponse(std::string_view body) {
  std::vector<VisionLabel> labels;
  try {
    nlohmann::json j = nlohmann::json::parse(body);
    for (const auto& item : j.at("labels")) {
      VisionLabel label;
      label.label = NormalizeLabel(item.at("label").get<std::string>());
      label.confidence = item.at("confidence").get<double>();
      if (!std::isfinite(label.confidence) || label.confidence < 0.0 ||
          label.confidence > 1.0) {
        throw Error(ErrorCode::kContract,
                    "vision confidence out of [0,1] for '" + label.label + "'");
      }
      if (label.label.empty()) throw Error(ErrorCode::kContract, "empty vision label");
      labels.push_back(std::move(label));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kContract, std::string("bad vision response: ") + e.what());
  }
  return labels;
}

}  // namespace akb
