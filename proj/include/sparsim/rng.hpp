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

#include <cstdint>
#include <random>

namespace sparsim {

/// Seedable source of uniform doubles for measurement sampling.
///
/// The generator is MT19937-64 (std::mt19937_64, whose output sequence is
/// fixed by the C++ standard). A draw takes the top 53 bits of one 64-bit
/// output and scales them by 2^-53, so draws lie in [0, 1) and are
/// bit-identical on every conforming platform. Seed 0 requests a seed from
/// std::random_device.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        if (seed == 0) {
            std::random_device rd;
            seed = (std::uint64_t{rd()} << 32) ^ rd();
        }
        gen_.seed(seed);
    }

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace sparsim
