// Copyright 2026 The nosig Authors
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

#include "nosig/box_json.h"

#include <fmt/format.h>

#include "nosig/errors.h"

namespace nosig {

prbox::BoxDistribution box_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("p")) {
        throw InvalidBox("box file must be a JSON object with key \"p\"");
    }
    const auto& p = doc.at("p");
    auto require_pair = [](const nlohmann::json& node, const std::string& path) {
        if (!node.is_array() || node.size() != 2) {
            throw InvalidBox(fmt::format("{} must be an array of length 2", path));
        }
    };
    prbox::BoxDistribution::Table table{};
    require_pair(p, "p");
    for (int x = 0; x < 2; ++x) {
        require_pair(p[x], fmt::format("p[{}]", x));
        for (int y = 0; y < 2; ++y) {
            require_pair(p[x][y], fmt::format("p[{}][{}]", x, y));
            for (int a = 0; a < 2; ++a) {
                require_pair(p[x][y][a], fmt::format("p[{}][{}][{}]", x, y, a));
                for (int b = 0; b < 2; ++b) {
                    const auto& value = p[x][y][a][b];
                    if (!value.is_number()) {
                        throw InvalidBox(fmt::format("p[{}][{}][{}][{}] must be a number", x, y, a, b));
                    }
                    table[x][y][a][b] = value.get<double>();
                }
            }
        }
    }
    return prbox::BoxDistribution(table);
}

prbox::BoxDistribution parse_box_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidBox(fmt::format("box file is not valid JSON: {}", e.what()));
    }
    return box_from_json(doc);
}

nlohmann::json box_to_json(const prbox::BoxDistribution& box) {
    nlohmann::json p = nlohmann::json::array();
    for (int x = 0; x < 2; ++x) {
        nlohmann::json px = nlohmann::json::array();
        for (int y = 0; y < 2; ++y) {
            nlohmann::json pxy = nlohmann::json::array();
            for (int a = 0; a < 2; ++a) {
                pxy.push_back({box.p(x, y, a, 0), box.p(x, y, a, 1)});
            }
            px.push_back(pxy);
        }
        p.push_back(px);
    }
    return {{"p", p}};
}

nlohmann::json feasibility_report_json(const prbox::FeasibilityReport& report, double chsh) {
    nlohmann::json out;
    out["feasible"] = report.feasible;
    if (report.witness) {
        out["witness"] = {{"sA", report.witness->s_a}, {"sB", report.witness->s_b}};
    } else {
        out["witness"] = nullptr;
    }
    out["min_eigenvalue"] = report.min_eigenvalue;
    out["chsh"] = chsh;
    return out;
}

}  // namespace nosig
