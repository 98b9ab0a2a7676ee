// Copyright 2026 The sparsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace sparsim {

/// A dense engine was asked to hold more qubits than its configured cap.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant (normalization, probability range) was found broken.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace sparsim
