#ifndef DELSUB_VERIFY_HPP
#define DELSUB_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "delsub/bounds.hpp"
#include "delsub/budget.hpp"
#include "delsub/error_model.hpp"
#include "delsub/word.hpp"

namespace delsub {

struct CertificateWitness {
    Word x, y, z;
    ErrorPattern pattern_x, pattern_y;
};

struct CertificateStats {
    uint64_t pairs_checked = 0;
    uint64_t balls_computed = 0;
    double wall_seconds = 0.0;
};

struct Certificate {
    bool pass = false;
    std::optional<CertificateWitness> witness;
    CertificateStats stats;
};

// Pass iff the error balls of all distinct words are pairwise disjoint.
// Every ball element is hashed to its generating word, so the cost is the
// total ball volume, not the number of pairs. On failure the witness is the
// lexicographically first (z, x, y) collision, independent of thread count.
Certificate verify_code(const std::vector<Word>& words, const BallSpec& spec,
                        Budget* budget = nullptr, unsigned threads = 1);

// Lexicographic greedy independent set in the confusability graph; the
// result is re-verified before being returned.
std::vector<Word> greedy_max_code(std::size_t n, unsigned q, const BallSpec& spec,
                                  Budget* budget = nullptr);

// One report row per length in [n_lo, n_hi].
std::vector<BoundReport> ds_table(std::size_t n_lo, std::size_t n_hi, unsigned q, unsigned s,
                                  Budget* budget = nullptr, unsigned threads = 1);

}  // namespace delsub

#endif
