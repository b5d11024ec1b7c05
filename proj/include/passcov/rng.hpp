#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace passcov {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw;
// SC'11 reference constants). Output is a pure function of (key, counter),
// so any (seed, stream, trial, draw) tuple maps to an independent value
// with no sequential state. That keeps Monte-Carlo runs reproducible under
// reordering and lets substreams be indexed directly by warden and trial.
struct Philox4x32 {
    using ctr_t = std::array<std::uint32_t, 4>;
    using key_t = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static ctr_t block(ctr_t c, key_t k) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
            const ctr_t next = {
                static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
                static_cast<std::uint32_t>(p1),
                static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
                static_cast<std::uint32_t>(p0),
            };
            c = next;
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return c;
    }
};

// One 64-bit word from lanes 0..1 of a block keyed by `seed`.
// Counter layout: (trial lo, trial hi, stream, draw).
inline std::uint64_t philox_u64(std::uint64_t seed, std::uint64_t trial,
                                std::uint32_t stream, std::uint32_t draw) {
    const Philox4x32::ctr_t c = {
        static_cast<std::uint32_t>(trial),
        static_cast<std::uint32_t>(trial >> 32),
        stream,
        draw,
    };
    const Philox4x32::key_t k = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    const auto out = Philox4x32::block(c, k);
    return (std::uint64_t(out[1]) << 32) | out[0];
}

// Uniform double in [0, 1) from the top 53 bits.
inline double philox_u01(std::uint64_t seed, std::uint64_t trial,
                         std::uint32_t stream, std::uint32_t draw) {
    return double(philox_u64(seed, trial, stream, draw) >> 11) * 0x1.0p-53;
}

// Two independent uniforms from one block (lanes 0..1 and 2..3).
inline std::pair<double, double> philox_u01x2(std::uint64_t seed, std::uint64_t trial,
                                              std::uint32_t stream, std::uint32_t draw) {
    const Philox4x32::ctr_t c = {
        static_cast<std::uint32_t>(trial),
        static_cast<std::uint32_t>(trial >> 32),
        stream,
        draw,
    };
    const Philox4x32::key_t k = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    const auto out = Philox4x32::block(c, k);
    const std::uint64_t w0 = (std::uint64_t(out[1]) << 32) | out[0];
    const std::uint64_t w1 = (std::uint64_t(out[3]) << 32) | out[2];
    return {double(w0 >> 11) * 0x1.0p-53, double(w1 >> 11) * 0x1.0p-53};
}

} // namespace passcov
