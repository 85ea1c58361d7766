// Copyright 2026 The securegap Authors
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

#ifndef SECUREGAP_ERRORS_HPP_
#define SECUREGAP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace securegap {

// Argument outside the documented domain of an operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke an operation's precondition on the relation between inputs
// (e.g. asking for a gap between values that are not strictly ordered).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The tie-breaking loop ran past its configured refinement cap.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset could not be read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace securegap

#endif  // SECUREGAP_ERRORS_HPP_
