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

#ifndef NOSIG_MIXTURE_IO_H
#define NOSIG_MIXTURE_IO_H

#include <ostream>
#include <span>
#include <string>

#include "nosig/pointer.h"

namespace nosig {

/// Shortest round-trippable form: 17 significant digits.
std::string format_real(double value);

/// Header `shift,weight`, one row per component in increasing shift.
void write_mixture_csv(std::ostream& out, const pointer::ShiftMixture& mixture);

/// Header `x,density`.
void write_density_csv(std::ostream& out, const pointer::Grid& grid, std::span<const double> density);

}  // namespace nosig

#endif
