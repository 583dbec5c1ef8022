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

#ifndef BELLSIM_OUTPUT_HPP
#define BELLSIM_OUTPUT_HPP

#include <string>
#include <utility>
#include <vector>

#include "bellsim/types.hpp"

namespace bellsim {

/// Columnar result set with reproducibility metadata.  Column order and
/// metadata order are fixed by insertion, so identical runs serialize
/// bit-identically (timestamps go only into the JSON sidecar).
class ResultTable {
public:
    void add_column(const std::string& name, std::vector<double> values);
    void set_meta(const std::string& key, const std::string& value);

    const std::vector<std::pair<std::string, std::vector<double>>>& columns() const
    {
        return columns_;
    }
    const std::vector<std::pair<std::string, std::string>>& metadata() const
    {
        return metadata_;
    }
    std::string meta(const std::string& key) const;
    const std::vector<double>& column(const std::string& name) const;
    size_t rows() const;

    /// CSV with '# key = value' metadata header lines.  Deterministic.
    std::string to_csv() const;
    void write_csv(const std::string& path) const;

    /// JSON object with metadata (plus a timestamp) and columns.
    std::string to_json(bool with_timestamp = true) const;
    void write_json(const std::string& path, bool with_timestamp = true) const;

private:
    std::vector<std::pair<std::string, std::vector<double>>> columns_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Standalone SVG heatmap of values(i, j) over (xs[i], ys[j]) with a
/// diverging palette centered at `level` and the level contour drawn
/// (marching squares).
void write_svg_heatmap(const std::string& path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       const RealMatrix& values, double level);

} // namespace bellsim

#endif // BELLSIM_OUTPUT_HPP
