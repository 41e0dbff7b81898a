// Copyright 2026 The rqbc Authors
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

#ifndef RQBC_ERRORS_H_
#define RQBC_ERRORS_H_

#include <stdexcept>

namespace rqbc {

/// A computed quantity left its admissible range by more than quadrature
/// noise. Indicates a construction bug, never bad user input.
class InvariantError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A protocol step was attempted out of order.
class ProtocolError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace rqbc

#endif  // RQBC_ERRORS_H_
