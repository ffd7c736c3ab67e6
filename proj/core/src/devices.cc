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

#include "activitykb/devices.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "activitykb/errors.h"
#include "activitykb/url.h"

namespace akb {

Delivery HttpDeliver(const DeviceRegistration& device, const std::string& body,
                     double timeout_seconds) {
  Delivery d;
  d.device = device.name;
  d.callback_url = device.callback_url;
  try {
    HttpUrl url = ParseHttpUrl(device.callback_url);
    httplib::Client client(url.Origin());
    client.set_url_encode(false);  // the callback path is already a URL
    auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(timeout_seconds));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto res = client.Post(url.path, body, "application/json");
    if (!res) {
      d.error = httplib::to_string(res.error());
      return d;
    }
    d.status = res->status;
    d.ok = res->status >= 200 && res->status < 300;
    if (!d.ok) d.error = "HTTP " + std::to_string(res->status);
  } catch (const std::exception& e) {
    d.error = e.what();
  }
  return d;
}

DeviceRegistry::DeviceRegistry(DeliverFn deliver, std::size_t max_in_flight)
    : deliver_(std::move(deliver)), max_in_flight_(std::max<std::size_t>(max_in_flight, 1)) {
  if (!deliver_) {
    deliver_ = [](const DeviceRegistration& device, const std::string& body) {
      return HttpDeliver(device, body, 5.0);
    };
  }
}

void DeviceRegistry::Register(DeviceRegistration registration) {
  if (registration.name.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "device name must not be empty");
  }
  try {
    ParseHttpUrl(registration.callback_url);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("invalid callback_url: ") + e.what());
  }
  for (std::string& a : registration.affordances) a = NormalizeLabel(a);
  std::unique_lock lock(mu_);
  for (const DeviceRegistration& d : devices_) {
    if (d.name == registration.name) {
      throw Error(ErrorCode::kAlreadyExists,
                  "device already registered: " + registration.name);
    }
  }
  devices_.push_back(std::move(registration));
}

std::vector<DeviceRegistration> DeviceRegistry::List() const {
  std::shared_lock lock(mu_);
  return devices_;
}

std::vector<Delivery> DeviceRegistry::Broadcast(const std::string& activity) const {
  std::string wanted = NormalizeLabel(activity);
  std::vector<DeviceRegistration> targets;
  {
    std::shared_lock lock(mu_);
    for (const DeviceRegistration& d : devices_) {
      if (std::find(d.affordances.begin(), d.affordances.end(), wanted) != d.affordances.end()) {
        targets.push_back(d);
      }
    }
  }
  std::vector<Delivery> report(targets.size());
  if (targets.empty()) return report;
  const std::string body = nlohmann::json{{"activity", wanted}}.dump();
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < targets.size(); i = next++) {
      report[i] = deliver_(targets[i], body);
    }
  };
  std::vector<std::thread> workers;
  std::size_t n = std::min(max_in_flight_, targets.size());
  for (std::size_t t = 1; t < n; ++t) workers.emplace_back(work);
  work();
  for (std::thread& w : workers) w.join();
  return report;
}

}  // namespace akb
