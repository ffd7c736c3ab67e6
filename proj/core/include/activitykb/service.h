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

#ifndef ACTIVITYKB_SERVICE_H_
#define ACTIVITYKB_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "activitykb/devices.h"
#include "activitykb/errors.h"
#include "activitykb/knowledge_base.h"
#include "activitykb/vision.h"
#include "activitykb/vsm.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace akb {

enum class Endpoint { kDetect, kAffordance, kPredict };

const char* EndpointName(Endpoint endpoint);
std::optional<Endpoint> ParseEndpoint(std::string_view name);

struct ApiQuery {
  std::vector<std::string> terms;  // normalized labels
  std::optional<std::string> target;
  std::size_t top_k = kDefaultTopK;
};

// The three models answering the endpoints, built once per KB.
struct ServiceModels {
  VectorModel object_activity;
  VectorModel object_affordance;
  VectorModel activity_prediction;
  KbMeta meta;

  const VectorModel& For(Endpoint endpoint) const;
};

std::shared_ptr<const ServiceModels> BuildModels(const KnowledgeBase& kb);

inline constexpr double kDefaultFireThreshold = 0.1;

// The JSON answer for a query: a ranked "predictions" list, or with a target
// the target's score and whether it reaches `threshold`. The CLI and the
// HTTP service both print exactly this text. Throws Error.
std::string RenderAnswer(const ServiceModels& models, Endpoint endpoint, const ApiQuery& query,
                         double threshold = kDefaultFireThreshold);

// {"error":{"code":...,"message":...}}
std::string RenderError(ErrorCode code, std::string_view message);
int HttpStatusFor(ErrorCode code);

// One label per line; blank lines and '#' comments are skipped.
std::set<std::string> LoadStoplist(const std::filesystem::path& path);

struct ServiceConfig {
  double threshold = kDefaultFireThreshold;
  // Labels removed from POST /detect object lists and vision output.
  std::set<std::string> stoplist;
  // Vision labels below this confidence are ignored.
  double min_confidence = 0.0;
  std::size_t max_in_flight = 4;
};

struct Response {
  int status = 200;
  std::string body;
};

// Request handling independent of the transport. Models are read-only; the
// device registry is the only mutable state.
class Service {
 public:
  // `models` may be null: every query then answers 503.
  Service(std::shared_ptr<const ServiceModels> models, ServiceConfig config,
          std::unique_ptr<VisionClient> vision = nullptr, DeliverFn deliver = {});

  // `raw_terms` is the still-encoded path segment after the endpoint name.
  Response Query(Endpoint endpoint, std::string_view raw_terms,
                 const std::optional<std::string>& target,
                 const std::optional<std::string>& top_k) const;
  Response PostDetect(std::string_view body) const;
  Response Register(std::string_view body);
  Response Broadcast(std::string_view raw_activity) const;
  Response Devices() const;
  Response Mae(std::string_view body) const;
  Response Health() const;

  const ServiceConfig& config() const { return config_; }

 private:
  Response Answer(Endpoint endpoint, const ApiQuery& query) const;

  std::shared_ptr<const ServiceModels> models_;
  ServiceConfig config_;
  std::unique_ptr<VisionClient> vision_;
  DeviceRegistry devices_;
};

// Routes HTTP requests to a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error(kIo).
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind.
  void Listen();
  // Listen() on a background thread.
  void Start();
  void Stop();

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace akb

#endif  // ACTIVITYKB_SERVICE_H_
