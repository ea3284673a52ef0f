#ifndef DELSUB_CHANNEL_HPP
#define DELSUB_CHANNEL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "delsub/decode.hpp"
#include "delsub/word.hpp"

namespace delsub {

// Vigna's public-domain splitmix64. The whole algorithm fits in three lines,
// so transcripts can be reproduced anywhere.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t state) : state_(state) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Multiply-shift range reduction; bound must be positive.
    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    uint64_t state_;
};

// The stream for trial t starts at seed + (t+1) * 0x9E3779B97F4A7C15, so
// serial and parallel schedules draw identical values.
inline SplitMix64 trial_stream(uint64_t seed, uint64_t trial) {
    return SplitMix64(seed + 0x9E3779B97F4A7C15ull * (trial + 1));
}

inline constexpr const char* kGeneratorName = "splitmix64";

struct ChannelConfig {
    unsigned deletion_count = 1;      // 0 or 1
    unsigned substitution_count = 1;  // 0 or 1
    uint64_t seed = 0;
    uint64_t trials = 1;
};

struct TrialFailure {
    uint64_t trial;
    Word codeword;
    Word received;
    std::string detail;
};

struct TrialReport {
    std::string generator;
    ChannelConfig config;
    std::size_t n = 0;
    unsigned q = 0;
    uint64_t successes = 0;
    std::vector<TrialFailure> failures;  // ordered by trial index
};

using DecodeFn = std::function<DecodeOutcome(const Word&)>;

// Per trial: draw a codeword, corrupt it with exactly the configured error
// counts, decode, compare. Decoder exceptions become trial failures.
TrialReport run_trials(const std::vector<Word>& codebook, const DecodeFn& decode,
                       const ChannelConfig& config, unsigned threads = 1);

}  // namespace delsub

#endif
