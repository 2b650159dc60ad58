// Copyright 2026 The sgec-tools Authors.
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

#ifndef SGEC_ERROR_H_
#define SGEC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgec {

enum class ErrorCode {
  kIo,          // unreadable or unwritable file
  kFormat,      // malformed input line or record
  kStructural,  // spans out of range, overlapping edits, bad edit kinds
  kValidation,  // corpus consistency: duplicate or missing utterance ids
  kAlignment,   // token confidences that cannot be reconciled with a transcript
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sgec

#endif  // SGEC_ERROR_H_
