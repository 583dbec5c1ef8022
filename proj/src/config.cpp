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

#include "bellsim/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bellsim {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': cannot parse '" + value
                          + "' as a number");
    }
}

} // namespace

const std::vector<std::string>& Config::allowed_keys()
{
    static const std::vector<std::string> keys = {
        // model
        "kappa", "E", "E_imag", "gamma0", "gamma1", "gamma2",
        "Delta0", "DeltaL", "N1", "N2", "dims",
        // run controls
        "varphi", "tmax", "nt", "threads", "out", "format",
        "steady_strategy",
        "wigner_min", "wigner_max", "wigner_n",
        "pdf_min", "pdf_max", "pdf_n",
        // sweep
        "axis1", "axis1_grid", "axis2", "axis2_grid", "max_points",
    };
    return keys;
}

Config Config::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

Config Config::from_string(const std::string& text)
{
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno)
                              + ": expected 'key = value'");
        }
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value)
{
    const auto& allowed = allowed_keys();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        std::string keys;
        for (const auto& k : allowed) {
            keys += (keys.empty() ? "" : ", ") + k;
        }
        throw ConfigError("config: unknown key '" + key + "' (allowed: " + keys + ")");
    }
    for (auto& e : entries_) {
        if (e.first == key) {
            e.second = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

bool Config::has(const std::string& key) const
{
    return lookup(key).has_value();
}

std::optional<std::string> Config::lookup(const std::string& key) const
{
    for (const auto& e : entries_) {
        if (e.first == key) {
            return e.second;
        }
    }
    return std::nullopt;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const
{
    return lookup(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const
{
    const auto v = lookup(key);
    return v ? parse_double(key, *v) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const
{
    const auto v = lookup(key);
    if (!v) {
        return fallback;
    }
    const double d = parse_double(key, *v);
    const int i = static_cast<int>(d);
    if (d != i) {
        throw ConfigError("config: key '" + key + "': expected an integer");
    }
    return i;
}

std::vector<int> Config::get_int_list(const std::string& key, std::vector<int> fallback) const
{
    const auto v = lookup(key);
    if (!v) {
        return fallback;
    }
    std::vector<int> out;
    std::istringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        out.push_back(static_cast<int>(parse_double(key, item)));
    }
    if (out.empty()) {
        throw ConfigError("config: key '" + key + "': empty list");
    }
    return out;
}

ModelSpec model_from_config(const Config& cfg)
{
    ModelSpec spec;
    spec.kappa = cfg.get_double("kappa", spec.kappa);
    spec.E = Complex(cfg.get_double("E", spec.E.real()), cfg.get_double("E_imag", 0.0));
    spec.gamma0 = cfg.get_double("gamma0", spec.gamma0);
    spec.gamma1 = cfg.get_double("gamma1", spec.gamma1);
    spec.gamma2 = cfg.get_double("gamma2", spec.gamma2);
    spec.Delta0 = cfg.get_double("Delta0", spec.Delta0);
    spec.DeltaL = cfg.get_double("DeltaL", spec.DeltaL);
    spec.N1 = cfg.get_double("N1", spec.N1);
    spec.N2 = cfg.get_double("N2", spec.N2);
    spec.dims = cfg.get_int_list("dims", spec.dims);
    spec.validate();
    return spec;
}

std::vector<std::pair<std::string, std::string>> model_to_config(const ModelSpec& spec)
{
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("kappa", format_double(spec.kappa));
    kv.emplace_back("E", format_double(spec.E.real()));
    if (spec.E.imag() != 0.0) {
        kv.emplace_back("E_imag", format_double(spec.E.imag()));
    }
    kv.emplace_back("gamma0", format_double(spec.gamma0));
    kv.emplace_back("gamma1", format_double(spec.gamma1));
    kv.emplace_back("gamma2", format_double(spec.gamma2));
    kv.emplace_back("Delta0", format_double(spec.Delta0));
    kv.emplace_back("DeltaL", format_double(spec.DeltaL));
    kv.emplace_back("N1", format_double(spec.N1));
    kv.emplace_back("N2", format_double(spec.N2));
    std::string dims;
    for (int d : spec.dims) {
        dims += (dims.empty() ? "" : ",") + std::to_string(d);
    }
    kv.emplace_back("dims", dims);
    return kv;
}

std::vector<double> parse_grid(const std::string& text)
{
    double a = 0.0, b = 0.0;
    long n = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &extra) != 3 || n < 1) {
        throw ConfigError("grid: expected 'a:b:n' with n >= 1, got '" + text + "'");
    }
    std::vector<double> grid(n);
    for (long i = 0; i < n; ++i) {
        grid[i] = (n == 1) ? a : a + (b - a) * i / static_cast<double>(n - 1);
    }
    return grid;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace bellsim
