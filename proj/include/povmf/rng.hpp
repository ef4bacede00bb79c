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

#pragma once

#include <cstdint>

namespace povmf {

/// Counter-based random stream. The n-th draw of stream (seed, stream) is a
/// fixed function of the triple, so independent consumers (trajectories,
/// probe states) can each own a stream without coordination and results do
/// not depend on scheduling or on the standard library implementation.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    /// Standard normal via Box-Muller.
    double normal() noexcept;

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace povmf
