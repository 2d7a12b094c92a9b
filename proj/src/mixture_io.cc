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

#include "nosig/mixture_io.h"

#include <fmt/format.h>

namespace nosig {

std::string format_real(double value) {
    // Normalize negative zero so reruns and platforms print the same bytes.
    if (value == 0.0) value = 0.0;
    return fmt::format("{:.17g}", value);
}

void write_mixture_csv(std::ostream& out, const pointer::ShiftMixture& mixture) {
    out << "shift,weight\n";
    for (const auto& c : mixture.components()) {
        out << c.shift << ',' << format_real(c.weight) << '\n';
    }
}

void write_density_csv(std::ostream& out, const pointer::Grid& grid, std::span<const double> density) {
    out << "x,density\n";
    for (std::size_t i = 0; i < density.size(); ++i) {
        out << format_real(grid.at(i)) << ',' << format_real(density[i]) << '\n';
    }
}

}  // namespace nosig
