// Copyright 2026 The QuPUF-Sim Authors
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

namespace qupuf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or text.
class ParseError : public Error {
   public:
    using Error::Error;
};

/// A value violates a domain invariant. The message names the offending field.
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// A referenced device, record or key does not exist.
class NotFoundError : public Error {
   public:
    using Error::Error;
};

}  // namespace qupuf
