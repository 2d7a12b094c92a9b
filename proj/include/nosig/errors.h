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

#ifndef NOSIG_ERRORS_H
#define NOSIG_ERRORS_H

#include <stdexcept>
#include <string>

namespace nosig {

/// Raised for inputs that violate a documented precondition (bad flags, bad
/// files, out-of-range parameters). The CLI maps these to exit status 2.
class UserError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A magnetization whose magnitude exceeds N or whose parity differs from N.
class InvalidMagnetization : public UserError {
   public:
    using UserError::UserError;
};

/// A box distribution that is not normalized or allows signaling.
class InvalidBox : public UserError {
   public:
    using UserError::UserError;
};

/// An internal consistency check failed. Exit status 3 in the CLI.
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace nosig

#endif
