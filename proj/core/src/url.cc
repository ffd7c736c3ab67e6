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

#include "activitykb/url.h"

#include <cctype>
#include <charconv>

#include "activitykb/errors.h"

namespace akb {
namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool IsUnreserved(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

}  // namespace

std::string PercentDecode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    int hi = i + 2 < text.size() ? HexValue(text[i + 1]) : -1;
    int lo = i + 2 < text.size() ? HexValue(text[i + 2]) : -1;
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed percent escape at offset " + std::to_string(i));
    }
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::string PercentEncode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (IsUnreserved(c)) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

std::string NormalizeLabel(std::string_view label) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : label) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::vector<std::string> DecodeTerms(std::string_view segment) {
  std::vector<std::string> terms;
  std::size_t begin = 0;
  while (begin <= segment.size()) {
    std::size_t end = segment.find('+', begin);
    if (end == std::string_view::npos) end = segment.size();
    std::string term = NormalizeLabel(PercentDecode(segment.substr(begin, end - begin)));
    if (!term.empty()) terms.push_back(std::move(term));
    begin = end + 1;
  }
  return terms;
}

std::string EncodeTerms(std::span<const std::string> terms) {
  std::string out;
  for (const std::string& term : terms) {
    if (!out.empty()) out += '+';
    out += PercentEncode(term);
  }
  return out;
}

std::string HttpUrl::Origin() const { return "http://" + host + ":" + std::to_string(port); }

HttpUrl ParseHttpUrl(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  std::size_t sep = url.find("://");
  if (sep == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "not a URL: " + std::string(url));
  }
  if (url.substr(0, sep + 3) != kScheme) {
    throw Error(ErrorCode::kUnsupported,
                "only http:// URLs are supported: " + std::string(url));
  }
  std::string_view rest = url.substr(kScheme.size());
  std::size_t slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  HttpUrl out;
  if (slash != std::string_view::npos) out.path = std::string(rest.substr(slash));
  std::size_t colon = authority.rfind(':');
  std::string_view host = authority.substr(0, colon);
  if (colon != std::string_view::npos) {
    std::string_view port = authority.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), out.port);
    if (ec != std::errc() || ptr != port.data() + port.size() || out.port < 1 ||
        out.port > 65535) {
      throw Error(ErrorCode::kInvalidArgument, "bad port in URL: " + std::string(url));
    }
  }
  if (host.empty()) throw Error(ErrorCode::kInvalidArgument, "no host in URL: " + std::string(url));
  for (unsigned char c : host) {
    if (!std::isalnum(c) && c != '.' && c != '-') {
      throw Error(ErrorCode::kInvalidArgument, "bad host in URL: " + std::string(url));
    }
  }
  out.host = std::string(host);
  return out;
}

}  // namespace akb
