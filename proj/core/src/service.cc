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

#include "activitykb/service.h"

#include <charconv>
#include <fstream>

#include "httplib.h"
#include "json.hpp"

#include "activitykb/mae.h"
#include "activitykb/url.h"

namespace akb {
namespace {

using Json = nlohmann::ordered_json;

Response ErrorResponse(ErrorCode code, std::string_view message) {
  return {HttpStatusFor(code), RenderError(code, message)};
}

Response JsonResponse(int status, const Json& j) { return {status, j.dump()}; }

std::size_t ParseTopK(std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "top_k must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::optional<std::string> NormalizeTarget(const std::optional<std::string>& target) {
  if (!target) return std::nullopt;
  std::string label = NormalizeLabel(*target);
  if (label.empty()) throw Error(ErrorCode::kInvalidArgument, "empty target");
  return label;
}

// Runs `fn`, mapping library errors onto error responses.
template <typename Fn>
Response Guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return ErrorResponse(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return ErrorResponse(ErrorCode::kInvalidArgument, std::string("bad JSON: ") + e.what());
  }
}

std::string RawPathAfter(const httplib::Request& req, std::string_view prefix) {
  std::string_view target = req.target;
  target = target.substr(0, target.find('?'));
  if (target.size() <= prefix.size()) return {};
  target.remove_prefix(prefix.size());
  if (!target.empty() && target.front() == '/') target.remove_prefix(1);
  return std::string(target);
}

std::optional<std::string> Param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

void Reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace

const char* EndpointName(Endpoint endpoint) {
  switch (endpoint) {
    case Endpoint::kDetect:
      return "detect";
    case Endpoint::kAffordance:
      return "affordance";
    case Endpoint::kPredict:
      return "predict";
  }
  return "unknown";
}

std::optional<Endpoint> ParseEndpoint(std::string_view name) {
  if (name == "detect") return Endpoint::kDetect;
  if (name == "affordance") return Endpoint::kAffordance;
  if (name == "predict") return Endpoint::kPredict;
  return std::nullopt;
}

const VectorModel& ServiceModels::For(Endpoint endpoint) const {
  switch (endpoint) {
    case Endpoint::kDetect:
      return object_activity;
    case Endpoint::kAffordance:
      return object_affordance;
    case Endpoint::kPredict:
      return activity_prediction;
  }
  return object_activity;
}

std::shared_ptr<const ServiceModels> BuildModels(const KnowledgeBase& kb) {
  auto models = std::make_shared<ServiceModels>();
  models->object_activity = VectorModel::Build(kb.activity_object.mi, kb.activity_freq,
                                               ModelKind::kObjectActivity);
  FreqTable affordance_freq;
  for (const auto& [label, count] : kb.object_affordance.counts.marginals_b) {
    affordance_freq.Add(label, count);
  }
  models->object_affordance = VectorModel::Build(kb.object_affordance.mi, affordance_freq,
                                                 ModelKind::kObjectAffordance);
  models->activity_prediction = VectorModel::Build(kb.activity_activity.mi, kb.activity_freq,
                                                   ModelKind::kActivityPrediction);
  models->meta = kb.meta;
  return models;
}

std::string RenderAnswer(const ServiceModels& models, Endpoint endpoint, const ApiQuery& query,
                         double threshold) {
  if (query.terms.empty()) throw Error(ErrorCode::kInvalidArgument, "empty query");
  const VectorModel& model = models.For(endpoint);
  Json j;
  if (query.target) {
    double score = model.ScoreSingle(query.terms, *query.target);
    j["activity"] = *query.target;
    j["score"] = score;
    j["fired"] = score >= threshold;
  } else {
    j["predictions"] = Json::array();
    for (const ScoredResult& r : model.Query(query.terms, query.top_k)) {
      j["predictions"].push_back({{"activity", r.label}, {"score", r.score},
                                  {"frequency", r.frequency}});
    }
  }
  return j.dump();
}

std::string RenderError(ErrorCode code, std::string_view message) {
  Json j;
  j["error"] = {{"code", ErrorCodeName(code)}, {"message", std::string(message)}};
  return j.dump();
}

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
    case ErrorCode::kUnsupported:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kAlreadyExists:
      return 409;
    case ErrorCode::kContract:
      return 502;
    case ErrorCode::kUnavailable:
      return 503;
    default:
      return 500;
  }
}

std::set<std::string> LoadStoplist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open stoplist " + path.string());
  std::set<std::string> labels;
  for (std::string line; std::getline(in, line);) {
    std::string label = NormalizeLabel(line);
    if (!label.empty() && label.front() != '#') labels.insert(std::move(label));
  }
  return labels;
}

Service::Service(std::shared_ptr<const ServiceModels> models, ServiceConfig config,
                 std::unique_ptr<VisionClient> vision, DeliverFn deliver)
    : models_(std::move(models)),
      config_(std::move(config)),
      vision_(std::move(vision)),
      devices_(std::move(deliver), config_.max_in_flight) {}

Response Service::Answer(Endpoint endpoint, const ApiQuery& query) const {
  if (!models_) return ErrorResponse(ErrorCode::kUnavailable, "no knowledge base loaded");
  if (query.terms.empty()) return ErrorResponse(ErrorCode::kInvalidArgument, "empty query");
  return {200, RenderAnswer(*models_, endpoint, query, config_.threshold)};
}

Response Service::Query(Endpoint endpoint, std::string_view raw_terms,
                        const std::optional<std::string>& target,
                        const std::optional<std::string>& top_k) const {
  return Guarded([&] {
    ApiQuery query;
    query.terms = DecodeTerms(raw_terms);
    query.target = NormalizeTarget(target);
    if (top_k) query.top_k = ParseTopK(*top_k);
    return Answer(endpoint, query);
  });
}

Response Service::PostDetect(std::string_view body) const {
  return Guarded([&] {
    nlohmann::json j = nlohmann::json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "body must be a JSON object");
    std::vector<std::string> labels;
    if (j.contains("objects")) {
      for (const auto& o : j.at("objects")) labels.push_back(NormalizeLabel(o.get<std::string>()));
    } else if (j.contains("image_url")) {
      if (!vision_) throw Error(ErrorCode::kUnavailable, "no vision endpoint configured");
      VisionRequest request;
      request.image_url = j.at("image_url").get<std::string>();
      for (const VisionLabel& v : vision_->Classify(request)) {
        if (v.confidence >= config_.min_confidence) labels.push_back(v.label);
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument, "expected \"objects\" or \"image_url\"");
    }
    ApiQuery query;
    for (std::string& label : labels) {
      if (!label.empty() && config_.stoplist.count(label) == 0) query.terms.push_back(label);
    }
    if (query.terms.empty() && !labels.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "no object labels left after filtering");
    }
    if (j.contains("target")) query.target = NormalizeTarget(j.at("target").get<std::string>());
    if (j.contains("top_k")) {
      auto k = j.at("top_k").get<std::int64_t>();
      if (k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be a positive integer");
      query.top_k = static_cast<std::size_t>(k);
    }
    return Answer(Endpoint::kDetect, query);
  });
}

Response Service::Register(std::string_view body) {
  return Guarded([&] {
    nlohmann::json j = nlohmann::json::parse(body);
    DeviceRegistration reg;
    reg.name = j.at("name").get<std::string>();
    reg.callback_url = j.at("callback_url").get<std::string>();
    reg.affordances = j.value("affordances", std::vector<std::string>{});
    devices_.Register(reg);
    return JsonResponse(201, Json{{"registered", reg.name}});
  });
}

Response Service::Broadcast(std::string_view raw_activity) const {
  return Guarded([&] {
    std::string activity = PercentDecode(raw_activity);
    std::replace(activity.begin(), activity.end(), '+', ' ');
    activity = NormalizeLabel(activity);
    if (activity.empty()) throw Error(ErrorCode::kInvalidArgument, "empty activity");
    Json deliveries = Json::array();
    for (const Delivery& d : devices_.Broadcast(activity)) {
      Json item{{"device", d.device}, {"callback_url", d.callback_url}, {"ok", d.ok},
                {"status", d.status}};
      if (!d.error.empty()) item["error"] = d.error;
      deliveries.push_back(std::move(item));
    }
    return JsonResponse(200, Json{{"activity", activity}, {"deliveries", deliveries}});
  });
}

Response Service::Devices() const {
  Json list = Json::array();
  for (const DeviceRegistration& d : devices_.List()) {
    list.push_back({{"name", d.name}, {"callback_url", d.callback_url},
                    {"affordances", d.affordances}});
  }
  return JsonResponse(200, Json{{"devices", list}});
}

Response Service::Mae(std::string_view body) const {
  return Guarded([&] {
    nlohmann::json j = nlohmann::json::parse(body);
    Distribution predicted = ParseDistribution(j.at("predicted").dump());
    Distribution reference = ParseDistribution(j.at("reference").dump());
    return JsonResponse(200, Json{{"mae", ComputeMae(predicted, reference)}});
  });
}

Response Service::Health() const {
  Json j{{"status", "ok"}, {"kb_loaded", models_ != nullptr}};
  if (models_) j["corpus_size"] = models_->meta.corpus_size;
  return JsonResponse(200, j);
}

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  httplib::Server& s = *server_;
  for (Endpoint endpoint : {Endpoint::kDetect, Endpoint::kAffordance, Endpoint::kPredict}) {
    std::string prefix = std::string("/") + EndpointName(endpoint);
    s.Get(prefix + "(/.*)?", [this, endpoint, prefix](const httplib::Request& req,
                                                      httplib::Response& res) {
      Reply(res, service_.Query(endpoint, RawPathAfter(req, prefix), Param(req, "target"),
                                Param(req, "top_k")));
    });
  }
  s.Post("/detect", [this](const httplib::Request& req, httplib::Response& res) {
    Reply(res, service_.PostDetect(req.body));
  });
  s.Post("/register", [this](const httplib::Request& req, httplib::Response& res) {
    Reply(res, service_.Register(req.body));
  });
  s.Post("/broadcast(/.*)?", [this](const httplib::Request& req, httplib::Response& res) {
    Reply(res, service_.Broadcast(RawPathAfter(req, "/broadcast")));
  });
  s.Post("/mae", [this](const httplib::Request& req, httplib::Response& res) {
    Reply(res, service_.Mae(req.body));
  });
  s.Get("/devices", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, service_.Devices());
  });
  s.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, service_.Health());
  });
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    ErrorCode code = res.status == 404 ? ErrorCode::kNotFound : ErrorCode::kInvalidArgument;
    res.set_content(RenderError(code, "no route for this request"), "application/json");
  });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  int bound = port == 0 ? server_->bind_to_any_port(host) : server_->bind_to_port(host, port)
                                                                   ? port
                                                                   : -1;
  if (bound < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::Listen() { server_->listen_after_bind(); }

void HttpServer::Start() {
  thread_ = std::thread([this] { Listen(); });
  server_->wait_until_ready();
}

void HttpServer::Stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace akb
