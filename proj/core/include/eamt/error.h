// Copyright 2026 The eamt Authors
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

#ifndef EAMT_ERROR_H_
#define EAMT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace eamt {

enum class ErrorCode {
  kParse,        // malformed input bytes (JSON, TSV, file format)
  kValidation,   // well-formed input violating a schema invariant
  kIo,           // file could not be opened, read, or written
  kConfig,       // invalid or incomplete configuration
  kDomain,       // numeric argument outside its domain
  kScoring,      // scoring preconditions not met
  kAggregation,  // report assembly failed (duplicates, inconsistency)
  kNetwork,      // transport failure after retries
  kProtocol,     // peer violated a wire protocol
  kUnavailable,  // external service could not be reached at all
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as eamt::Error. The message is
// human-readable and already carries the context (file, line, field).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eamt

#endif  // EAMT_ERROR_H_
