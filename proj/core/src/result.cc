// Copyright 2026 The sdnemu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdnemu/result.h"

#include <string>
#include <string_view>

namespace sdnemu {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kUnknownNode:
      return "UnknownNode";
    case ErrorCode::kSameEndpoint:
      return "SameEndpoint";
    case ErrorCode::kUnknownSwitch:
      return "UnknownSwitch";
    case ErrorCode::kInvalidPort:
      return "InvalidPort";
    case ErrorCode::kUnknownHost:
      return "UnknownHost";
    case ErrorCode::kAddressMismatch:
      return "AddressMismatch";
    case ErrorCode::kNoRoute:
      return "NoRoute";
    case ErrorCode::kNoFeasiblePath:
      return "NoFeasiblePath";
    case ErrorCode::kNoAliveServer:
      return "NoAliveServer";
    case ErrorCode::kUnknownFlow:
      return "UnknownFlow";
    case ErrorCode::kTimeRegression:
      return "TimeRegression";
  }
  return "Unknown";
}

std::string Error::ToString() const {
  std::string out(ErrorCodeName(code));
  if (!message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

}  // namespace sdnemu
