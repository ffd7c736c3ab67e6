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

#ifndef ACTIVITYKB_DEVICES_H_
#define ACTIVITYKB_DEVICES_H_

#include <functional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace akb {

struct DeviceRegistration {
  std::string name;
  std::string callback_url;
  std::vector<std::string> affordances;  // activity labels

  bool operator==(const DeviceRegistration&) const = default;
};

struct Delivery {
  std::string device;
  std::string callback_url;
  bool ok = false;
  int status = 0;  // HTTP status, 0 when unreachable
  std::string error;
};

// Sends one broadcast body to one device.
using DeliverFn = std::function<Delivery(const DeviceRegistration&, const std::string& body)>;

// HTTP POST of `body` to the callback URL.
Delivery HttpDeliver(const DeviceRegistration& device, const std::string& body,
                     double timeout_seconds);

// In-memory device registry; the only mutable state of the service.
class DeviceRegistry {
 public:
  explicit DeviceRegistry(DeliverFn deliver = {}, std::size_t max_in_flight = 4);

  // Throws Error(kInvalidArgument) for an empty name or invalid URL and
  // Error(kAlreadyExists) for a duplicate name. Affordances are normalized.
  void Register(DeviceRegistration registration);
  std::vector<DeviceRegistration> List() const;

  // POSTs {"activity": ...} to every device whose affordances contain the
  // activity, at most max_in_flight at once. Failures are reported per
  // device; the report follows registration order.
  std::vector<Delivery> Broadcast(const std::string& activity) const;

 private:
  mutable std::shared_mutex mu_;
  std::vector<DeviceRegistration> devices_;
  DeliverFn deliver_;
  std::size_t max_in_flight_;
};

}  // namespace akb

#endif  // ACTIVITYKB_DEVICES_H_
