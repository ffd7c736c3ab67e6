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

#ifndef ACTIVITYKB_URL_H_
#define ACTIVITYKB_URL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace akb {

// Strict %XX decoding; a literal '+' is kept. Throws Error(kInvalidArgument)
// on a malformed escape.
std::string PercentDecode(std::string_view text);
// Escapes everything outside [A-Za-z0-9-._~] as uppercase %XX.
std::string PercentEncode(std::string_view text);

// A query path segment: '+' separates terms, %20 or a literal space separates
// words inside a term. Terms are lowercased, surrounding whitespace is
// trimmed and runs of inner whitespace collapse to one space; empty terms
// are dropped, so the result may be empty.
std::vector<std::string> DecodeTerms(std::string_view segment);
// Inverse of DecodeTerms for normalized terms.
std::string EncodeTerms(std::span<const std::string> terms);

// Lowercase, trimmed, single-spaced.
std::string NormalizeLabel(std::string_view label);

struct HttpUrl {
  std::string host;
  int port = 80;
  std::string path = "/";

  // "http://host:port" for an HTTP client.
  std::string Origin() const;
};

// Accepts http://host[:port][/path]. Throws Error(kInvalidArgument) for
// malformed URLs and Error(kUnsupported) for other schemes.
HttpUrl ParseHttpUrl(std::string_view url);

}  // namespace akb

#endif  // ACTIVITYKB_URL_H_
