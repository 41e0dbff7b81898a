// Copyright 2026 The rqbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RQBC_CLI_CONFIG_H_
#define RQBC_CLI_CONFIG_H_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rqbc::cli {

/// Malformed or invalid configuration; `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string &source, int line, const std::string &message);

    int line() const {
        return line_;
    }

   private:
    int line_;
};

/// Flat key/value configuration read from either a JSON object or
/// `key = value` lines. Values in the line format are JSON literals, with
/// bare words taken as strings:
///
///   shape = rectangular
///   deltas = [0.5, 1, 2]
///   N = 20   # comments run to end of line
class ConfigDoc {
   public:
    ConfigDoc() = default;
    static ConfigDoc parse(std::string_view text, std::string source = "<config>");
    static ConfigDoc load(const std::string &path);

    bool has(const std::string &key) const {
        return values_.contains(key);
    }
    double number(const std::string &key, std::optional<double> fallback = std::nullopt) const;
    int64_t integer(const std::string &key, std::optional<int64_t> fallback = std::nullopt) const;
    std::string string(const std::string &key, std::optional<std::string> fallback = std::nullopt) const;
    /// Accepts a scalar or an array of numbers.
    std::vector<double> numbers(const std::string &key, std::optional<std::vector<double>> fallback = std::nullopt) const;
    std::vector<std::string> strings(const std::string &key,
                                     std::optional<std::vector<std::string>> fallback = std::nullopt) const;

    /// Throws ConfigError naming the first key outside `allowed`.
    void reject_unknown(std::initializer_list<std::string_view> allowed) const;

    [[noreturn]] void fail(const std::string &key, const std::string &message) const;

    /// Line of a key, 0 if absent.
    int line_of(const std::string &key) const;

    const std::string &text() const {
        return text_;
    }
    const std::string &source() const {
        return source_;
    }

   private:
    const nlohmann::json &require(const std::string &key) const;

    std::string source_;
    std::string text_;
    nlohmann::json values_ = nlohmann::json::object();
    std::map<std::string, int> lines_;
};

/// FNV-1a 64-bit hash, hex encoded.
std::string config_hash(std::string_view text);

}  // namespace rqbc::cli

#endif  // RQBC_CLI_CONFIG_H_
