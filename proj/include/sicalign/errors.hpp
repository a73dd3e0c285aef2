// Copyright 2026 The sicalign Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace sic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Input errors: the arguments violate a precondition.
class NotInvertible : public Error {
   public:
    using Error::Error;
};
class NotCoprime : public Error {
   public:
    using Error::Error;
};
class NotSymplectic : public Error {
   public:
    using Error::Error;
};
class DimensionError : public Error {
   public:
    using Error::Error;
};
class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

// Verification errors: a numerical identity failed. Raised by the
// report types' require() methods, or directly when the failure can only
// mean an implementation bug.
class MergeMismatch : public Error {
   public:
    using Error::Error;
};
class AuditFailure : public Error {
   public:
    using Error::Error;
};
class BlockLeakage : public Error {
   public:
    using Error::Error;
};
class NotASic : public Error {
   public:
    using Error::Error;
};
class SearchSpaceExhausted : public Error {
   public:
    using Error::Error;
};
class BlockMismatch : public Error {
   public:
    using Error::Error;
};
class PartitionFailure : public Error {
   public:
    using Error::Error;
};
class SymmetryFailure : public Error {
   public:
    using Error::Error;
};
class NotConverged : public Error {
   public:
    using Error::Error;
};

}  // namespace sic
