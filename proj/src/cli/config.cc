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

#include "rqbc/cli/config.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rqbc::cli {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

int line_at_offset(std::string_view text, size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Drops a trailing comment, ignoring '#' inside double quotes.
std::string strip_comment(std::string_view line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return std::string(line.substr(0, i));
        }
    }
    return std::string(line);
}

bool is_bare_word(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' || c == '/';
    });
}

}  // namespace

ConfigError::ConfigError(const std::string &source, int line, const std::string &message)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message),
      line_(line) {
}

ConfigDoc ConfigDoc::parse(std::string_view text, std::string source) {
    ConfigDoc doc;
    doc.source_ = std::move(source);
    doc.text_ = std::string(text);
    std::string head = trim(text);
    if (!head.empty() && head.front() == '{') {
        try {
            doc.values_ = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error &e) {
            throw ConfigError(doc.source_, line_at_offset(text, e.byte > 0 ? e.byte - 1 : 0),
                              "JSON parse error: " + std::string(e.what()));
        }
        if (!doc.values_.is_object()) {
            throw ConfigError(doc.source_, 1, "configuration must be a JSON object");
        }
        for (const auto &item : doc.values_.items()) {
            size_t pos = text.find("\"" + item.key() + "\"");
            doc.lines_[item.key()] = pos == std::string_view::npos ? 0 : line_at_offset(text, pos);
        }
        return doc;
    }

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(doc.source_, line_no, "expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || !is_bare_word(key)) {
            throw ConfigError(doc.source_, line_no, "malformed key '" + key + "'");
        }
        if (doc.values_.contains(key)) {
            throw ConfigError(doc.source_, line_no, "duplicate key '" + key + "'");
        }
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(value);
        } catch (const nlohmann::json::parse_error &) {
            if (!is_bare_word(value)) {
                throw ConfigError(doc.source_, line_no, "cannot parse value '" + value + "'");
            }
            parsed = value;
        }
        doc.values_[key] = std::move(parsed);
        doc.lines_[key] = line_no;
    }
    return doc;
}

ConfigDoc ConfigDoc::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path, 0, "cannot open configuration file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path);
}

int ConfigDoc::line_of(const std::string &key) const {
    auto it = lines_.find(key);
    return it == lines_.end() ? 0 : it->second;
}

void ConfigDoc::fail(const std::string &key, const std::string &message) const {
    throw ConfigError(source_, line_of(key), "'" + key + "': " + message);
}

const nlohmann::json &ConfigDoc::require(const std::string &key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError(source_, 0, "missing required key '" + key + "'");
    }
    return *it;
}

double ConfigDoc::number(const std::string &key, std::optional<double> fallback) const {
    if (!has(key) && fallback) {
        return *fallback;
    }
    const auto &v = require(key);
    if (!v.is_number()) {
        fail(key, "expected a number");
    }
    return v.get<double>();
}

int64_t ConfigDoc::integer(const std::string &key, std::optional<int64_t> fallback) const {
    if (!has(key) && fallback) {
        return *fallback;
    }
    const auto &v = require(key);
    if (!v.is_number_integer()) {
        fail(key, "expected an integer");
    }
    return v.get<int64_t>();
}

std::string ConfigDoc::string(const std::string &key, std::optional<std::string> fallback) const {
    if (!has(key) && fallback) {
        return *fallback;
    }
    const auto &v = require(key);
    if (!v.is_string()) {
        fail(key, "expected a string");
    }
    return v.get<std::string>();
}

std::vector<double> ConfigDoc::numbers(const std::string &key, std::optional<std::vector<double>> fallback) const {
    if (!has(key) && fallback) {
        return *fallback;
    }
    const auto &v = require(key);
    if (v.is_number()) {
        return {v.get<double>()};
    }
    if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const auto &x) { return x.is_number(); })) {
        fail(key, "expected a number or an array of numbers");
    }
    return v.get<std::vector<double>>();
}

std::vector<std::string> ConfigDoc::strings(const std::string &key,
                                            std::optional<std::vector<std::string>> fallback) const {
    if (!has(key) && fallback) {
        return *fallback;
    }
    const auto &v = require(key);
    if (v.is_string()) {
        return {v.get<std::string>()};
    }
    if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const auto &x) { return x.is_string(); })) {
        fail(key, "expected a string or an array of strings");
    }
    return v.get<std::vector<std::string>>();
}

void ConfigDoc::reject_unknown(std::initializer_list<std::string_view> allowed) const {
    for (const auto &item : values_.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            fail(item.key(), "unknown key");
        }
    }
}

std::string config_hash(std::string_view text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace rqbc::cli
