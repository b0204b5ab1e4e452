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

#ifndef EFTQPE_UTIL_KV_H
#define EFTQPE_UTIL_KV_H

#include <map>
#include <string>
#include <vector>

namespace eftqpe {

/// Flat `key = value` text. '#' starts a comment; later keys override earlier ones.
class KeyValues {
   public:
    static KeyValues parse(const std::string &text);
    static KeyValues load(const std::string &path);

    bool has(const std::string &key) const;
    std::string get(const std::string &key) const;
    std::string get_or(const std::string &key, const std::string &fallback) const;
    double get_double(const std::string &key) const;
    double get_double_or(const std::string &key, double fallback) const;
    long long get_int_or(const std::string &key, long long fallback) const;
    /// Comma or whitespace separated numbers.
    std::vector<double> get_doubles(const std::string &key) const;
    void set(const std::string &key, const std::string &value);
    const std::map<std::string, std::string> &entries() const {
        return entries_;
    }

   private:
    std::map<std::string, std::string> entries_;
};

std::string read_text_file(const std::string &path);

}  // namespace eftqpe

#endif
