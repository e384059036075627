// Copyright 2026 The spo-narrative Authors.
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

#include <charconv>
#include <sstream>

#include "spo/ingest.h"
#include "spo/pipeline.h"

namespace spo {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int positive_int(std::string_view v, const std::string& where) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || out < 1) {
    throw InputError(where + ": expected a positive integer");
  }
  return out;
}

}  // namespace

Config parse_config(std::string_view text) {
  Config config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError(where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "chain-depth") {
      config.chain_depth = positive_int(value, where);
    } else if (key == "jobs") {
      config.jobs = positive_int(value, where);
    } else if (key == "eq1-strict") {
      if (value == "true" || value == "1" || value == "yes") {
        config.eq1_strict = true;
      } else if (value == "false" || value == "0" || value == "no") {
        config.eq1_strict = false;
      } else {
        throw InputError(where + ": eq1-strict must be true or false");
      }
    } else if (key == "modifier-deprels") {
      std::istringstream words{std::string(value)};
      config.modifier_deprels.clear();
      for (std::string w; words >> w;) config.modifier_deprels.push_back(w);
    } else {
      throw InputError(where + ": unknown key '" + key + "'");
    }
  }
  return config;
}

Config load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

}  // namespace spo
