#include "delsub/channel.hpp"

#include <sstream>
#include <stdexcept>

#include "delsub/parallel.hpp"

namespace delsub {

namespace {

struct TrialChunk {
    uint64_t successes = 0;
    std::vector<TrialFailure> failures;
};

std::string outcome_detail(const DecodeOutcome& outcome, const Word& expected) {
    switch (outcome.status) {
        case DecodeStatus::decoded:
            return outcome.codeword && *outcome.codeword == expected
                       ? ""
                       : "decoded to " + outcome.codeword->str() + " instead of " +
                             expected.str();
        case DecodeStatus::not_a_codeword_channel_output:
            return "decoder found no candidate";
        case DecodeStatus::ambiguous: {
            std::ostringstream msg;
            msg << "decoder found " << outcome.candidates.size() << " candidates";
            return msg.str();
        }
    }
    return "unknown decoder status";
}

}  // namespace

TrialReport run_trials(const std::vector<Word>& codebook, const DecodeFn& decode,
                       const ChannelConfig& config, unsigned threads) {
    if (codebook.empty()) throw std::invalid_argument("codebook is empty");
    if (config.deletion_count > 1 || config.substitution_count > 1)
        throw std::invalid_argument("channel supports at most one deletion and one substitution");
    const std::size_t n = codebook.front().size();
    const unsigned q = codebook.front().q();
    if (config.deletion_count == 1 && n < 2)
        throw std::invalid_argument("deletions need length >= 2");

    auto run_one = [&](uint64_t trial, TrialChunk& acc) {
        SplitMix64 rng = trial_stream(config.seed, trial);
        const Word& x = codebook[static_cast<std::size_t>(rng.below(codebook.size()))];
        std::vector<uint8_t> v(x.symbols());
        if (config.deletion_count == 1) {
            const std::size_t d = static_cast<std::size_t>(rng.below(n));
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(d));
        }
        if (config.substitution_count == 1) {
            const std::size_t e = static_cast<std::size_t>(rng.below(v.size()));
            const uint64_t alt = rng.below(q - 1);
            v[e] = static_cast<uint8_t>(alt >= v[e] ? alt + 1 : alt);
        }
        const Word received(std::move(v), q);
        std::string detail;
        try {
            detail = outcome_detail(decode(received), x);
        } catch (const std::exception& e) {
            detail = std::string("decoder error: ") + e.what();
        }
        if (detail.empty())
            ++acc.successes;
        else
            acc.failures.push_back({trial, x, received, std::move(detail)});
    };

    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        TrialChunk acc;
        for (uint64_t t = lo; t < hi; ++t) run_one(t, acc);
        return acc;
    };
    auto combine = [](TrialChunk acc, TrialChunk part) {
        acc.successes += part.successes;
        acc.failures.insert(acc.failures.end(), part.failures.begin(), part.failures.end());
        return acc;
    };
    TrialChunk merged = parallel_index_reduce(0, config.trials, TrialChunk{}, map_chunk,
                                              combine, threads, 1024);

    TrialReport report;
    report.generator = kGeneratorName;
    report.config = config;
    report.n = n;
    report.q = q;
    report.successes = merged.successes;
    report.failures = std::move(merged.failures);
    return report;
}

}  // namespace delsub
