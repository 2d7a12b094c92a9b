// Copyright 2026 The nosig Authors
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

#ifndef NOSIG_RNG_H
#define NOSIG_RNG_H

#include <array>
#include <cstdint>
#include <limits>

namespace nosig {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// The 64-bit seed is the key. The 128-bit counter is split into a 64-bit
/// block index and a 64-bit stream id, so distinct streams under one seed
/// never share a counter value. Each block yields two 64-bit outputs.
class Philox4x32 {
   public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (buffered_ == 0) refill();
        return buffer_[--buffered_];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// The raw 10-round bijection.
    static Block generate(Block counter, Key key);

   private:
    void refill();

    Key key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

/// Identifies one reproducible random sequence.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    Philox4x32 engine() const { return Philox4x32(seed, stream); }
};

}  // namespace nosig

#endif
