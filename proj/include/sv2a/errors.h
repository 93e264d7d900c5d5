// Copyright 2026 The SV2A Authors. All Rights Reserved.
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

#ifndef SV2A_ERRORS_H_
#define SV2A_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sv2a {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Input data did not follow the expected file format.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A linear system was singular beyond tolerance.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A computation produced a non-finite or diverging value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sv2a

#endif  // SV2A_ERRORS_H_
