#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace edaudit {

// Deterministic, platform-stable randomness. std::hash and the standard
// distributions are implementation-defined, so seed derivation and uniform
// draws are done by hand: FNV-1a for strings, splitmix64 for mixing.

constexpr std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed for one (task, context) cell. Independent across cells so execution
// order and parallelism cannot change results.
inline std::uint64_t derive_cell_seed(std::uint64_t seed, std::string_view task_id,
                                      std::string_view context_id) {
    std::string key;
    key.reserve(task_id.size() + context_id.size() + 1);
    key.append(task_id);
    key.push_back('\x1f');
    key.append(context_id);
    return splitmix64(seed ^ fnv1a64(key));
}

inline std::uint64_t derive_stream_seed(std::uint64_t base, std::string_view label) {
    return splitmix64(base ^ fnv1a64(label));
}

// Counter-based uniform stream: draw(i) is independent of draw(j) and of call
// order.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t index) const { return splitmix64(seed_ + 0x632be59bd9b4e019ull * (index + 1)); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }

    bool bernoulli(std::uint64_t index, double p) const { return uniform(index) < p; }

    // Uniform integer in [0, n) by rejection-free scaling (n fits 32 bits in
    // all call sites; bias is < 2^-32 and irrelevant for resampling).
    std::uint64_t below(std::uint64_t index, std::uint64_t n) const {
        return static_cast<std::uint64_t>(uniform(index) * static_cast<double>(n));
    }

private:
    std::uint64_t seed_;
};

// Sequential variant for call sites that want an advancing stream.
class SequentialRng {
public:
    explicit SequentialRng(std::uint64_t seed) : stream_(seed) {}
    double uniform() { return stream_.uniform(counter_++); }
    std::uint64_t below(std::uint64_t n) { return stream_.below(counter_++, n); }
    bool bernoulli(double p) { return stream_.bernoulli(counter_++, p); }

private:
    SeededStream stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace edaudit
