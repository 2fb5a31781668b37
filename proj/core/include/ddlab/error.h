// Copyright 2026 The ddlab Authors
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

#ifndef DDLAB_ERROR_H
#define DDLAB_ERROR_H

#include <stdexcept>
#include <string>

namespace ddlab {

/// Caller passed a value outside an operation's domain.
class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Text input (CSV, JSON) could not be parsed.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A JSON document violated the config schema. `pointer` is an RFC 6901
/// JSON pointer to the offending value.
class SchemaError : public std::runtime_error {
   public:
    SchemaError(std::string pointer, const std::string &message)
        : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {
    }
    const std::string &pointer() const {
        return pointer_;
    }

   private:
    std::string pointer_;
};

/// The decay fitter failed from every starting point.
class FitError : public std::runtime_error {
   public:
    FitError(const std::string &message, double best_residual_rms)
        : std::runtime_error(message), best_residual_rms_(best_residual_rms) {
    }
    double best_residual_rms() const {
        return best_residual_rms_;
    }

   private:
    double best_residual_rms_;
};

/// Numerical invariant broken inside the library (e.g. a propagator that
/// could not be made trace preserving).
class InternalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace ddlab

#endif
