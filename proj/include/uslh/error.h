// Copyright 2026 The USL-H Metric Authors
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
//

#ifndef USLH_ERROR_H_
#define USLH_ERROR_H_

#include <stdexcept>
#include <string>

namespace uslh {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kNotFound,
  kUndefined,  // statistic or rate undefined for the given input
  kIo,
};

// All library failures are reported through this type. The CLI maps every
// Error to exit status 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline Error InvalidArgument(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}

inline Error ParseError(const std::string& message) {
  return Error(ErrorCode::kParse, message);
}

}  // namespace uslh

#endif  // USLH_ERROR_H_
