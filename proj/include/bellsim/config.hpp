// Copyright 2026 The bellsim Authors
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

#ifndef BELLSIM_CONFIG_HPP
#define BELLSIM_CONFIG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/models.hpp"

namespace bellsim {

/// Flat key = value configuration.  Keys are validated against the
/// documented schema; unknown keys are errors.  Insertion order is kept
/// so emitted metadata is deterministic.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const
    {
        return entries_;
    }

    /// Documented key set (model parameters plus run controls).
    static const std::vector<std::string>& allowed_keys();

private:
    std::optional<std::string> lookup(const std::string& key) const;
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// ModelSpec from the flat keys kappa, E, E_imag, gamma0, gamma1, gamma2,
/// Delta0, DeltaL, N1, N2, dims.
ModelSpec model_from_config(const Config& cfg);

/// Flat key-value rendering of a ModelSpec (round-trips through
/// model_from_config).
std::vector<std::pair<std::string, std::string>> model_to_config(const ModelSpec& spec);

/// "a:b:n" -> n evenly spaced values from a to b.
std::vector<double> parse_grid(const std::string& text);

std::string format_double(double v);

} // namespace bellsim

#endif // BELLSIM_CONFIG_HPP
