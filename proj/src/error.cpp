// Copyright 2026 The povmf Authors
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

#include "povmf/error.hpp"

namespace povmf {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPositive: return "NotPositive";
        case ErrorCode::NotComplete: return "NotComplete";
        case ErrorCode::NotNumeric: return "NotNumeric";
        case ErrorCode::NotTracePreserving: return "NotTracePreserving";
        case ErrorCode::NotProjective: return "NotProjective";
        case ErrorCode::NotCommuting: return "NotCommuting";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::ImpossibleOutcome: return "ImpossibleOutcome";
        case ErrorCode::CapacityExceeded: return "CapacityExceeded";
        case ErrorCode::PhaseMismatch: return "PhaseMismatch";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace povmf
