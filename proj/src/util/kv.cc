// Copyright 2026 The eftqpe Authors
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

#include "eftqpe/util/kv.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eftqpe {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string &key, const std::string &text) {
    size_t used = 0;
    double v;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument("config key '" + key + "' is not a number: '" + text + "'");
    }
    if (trim(text.substr(used)) != "" || !std::isfinite(v)) {
        throw std::invalid_argument("config key '" + key + "' is not a finite number: '" + text + "'");
    }
    return v;
}

}  // namespace

std::string read_text_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

KeyValues KeyValues::parse(const std::string &text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + " lacks '='");
        }
        kv.entries_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues KeyValues::load(const std::string &path) {
    return parse(read_text_file(path));
}

bool KeyValues::has(const std::string &key) const {
    return entries_.count(key) > 0;
}

std::string KeyValues::get(const std::string &key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw std::invalid_argument("missing config key '" + key + "'");
    }
    return it->second;
}

std::string KeyValues::get_or(const std::string &key, const std::string &fallback) const {
    return has(key) ? get(key) : fallback;
}

double KeyValues::get_double(const std::string &key) const {
    return parse_number(key, get(key));
}

double KeyValues::get_double_or(const std::string &key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long KeyValues::get_int_or(const std::string &key, long long fallback) const {
    if (!has(key)) {
        return fallback;
    }
    double v = get_double(key);
    if (v != std::floor(v)) {
        throw std::invalid_argument("config key '" + key + "' must be an integer");
    }
    return (long long)v;
}

std::vector<double> KeyValues::get_doubles(const std::string &key) const {
    std::string s = get(key);
    for (auto &c : s) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::istringstream in(s);
    std::vector<double> out;
    for (std::string tok; in >> tok;) {
        out.push_back(parse_number(key, tok));
    }
    return out;
}

void KeyValues::set(const std::string &key, const std::string &value) {
    entries_[key] = value;
}

}  // namespace eftqpe
