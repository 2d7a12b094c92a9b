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

#ifndef NOSIG_BOX_JSON_H
#define NOSIG_BOX_JSON_H

#include <string>

#include "json.hpp"
#include "nosig/prbox.h"

namespace nosig {

/// Parses {"p": [[[[...]]]]} indexed [x][y][a][b], outcome index 0 = +1.
/// Shape and type problems raise InvalidBox naming the offending path;
/// probability constraints are checked by BoxDistribution itself.
prbox::BoxDistribution box_from_json(const nlohmann::json& doc);
prbox::BoxDistribution parse_box_json(const std::string& text);

nlohmann::json box_to_json(const prbox::BoxDistribution& box);

/// {"feasible", "witness": {"sA", "sB"} | null, "min_eigenvalue", "chsh"}
nlohmann::json feasibility_report_json(const prbox::FeasibilityReport& report, double chsh);

}  // namespace nosig

#endif
