#ifndef DELSUB_ERROR_MODEL_HPP
#define DELSUB_ERROR_MODEL_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "delsub/budget.hpp"
#include "delsub/word.hpp"

namespace delsub {

// Error-ball descriptor: exactly t deletions, then at most s substitutions.
// The adjacent-transposition option exists solely for the signature inner code
// and never combines with substitutions.
struct BallSpec {
    unsigned deletions = 0;
    unsigned max_substitutions = 0;
    unsigned max_adjacent_transpositions = 0;

    BallSpec() = default;
    BallSpec(unsigned t, unsigned s, unsigned transpositions = 0)
        : deletions(t), max_substitutions(s), max_adjacent_transpositions(transpositions) {
        if (transpositions > 1) throw std::invalid_argument("at most one adjacent transposition supported");
        if (transpositions == 1 && (s != 0 || t > 1))
            throw std::invalid_argument("transposition option only combines with t<=1, s=0");
    }
};

enum class TransposeOrder { before_deletion, after_deletion };

// Positions are 1-based. deleted_positions index the original word;
// substituted_positions index the word after deletion (canonical order:
// delete first, then substitute). A transposition swaps (p, p+1) either
// before or after the deletions, as flagged.
struct ErrorPattern {
    std::vector<std::size_t> deleted_positions;
    std::vector<std::pair<std::size_t, uint8_t>> substituted_positions;
    std::optional<std::size_t> transposed_position;
    TransposeOrder transpose_order = TransposeOrder::before_deletion;
};

// The single-error operator x(d,e): delete position d (1-based), then
// substitute position e of the shortened word with new_symbol.
Word apply_del_sub(const Word& x, std::size_t d, std::optional<std::size_t> e,
                   std::optional<uint8_t> new_symbol);

Word apply_pattern(const Word& x, const ErrorPattern& p);

// B^{DS}_{t,s}(x) as a lexicographically sorted, duplicate-free list.
// Supported t: 0 or 1 (the constructions need nothing deeper).
std::vector<Word> ball_del_sub(const Word& x, const BallSpec& spec, Budget* budget = nullptr);

// |B^{DS}_{t,s}(x)| without materializing the words.
std::size_t ball_del_sub_size(const Word& x, const BallSpec& spec, Budget* budget = nullptr);

// Exactly t deletions and at most one adjacent swap, swap applied first.
std::vector<Word> ball_del_transposition(const Word& x, unsigned t, Budget* budget = nullptr);

// Closed form for |B^{DS}_{1,1}(x)|: (n-1)(q-1)+1 when r(x)=1, otherwise
// r(x)[(n-3)(q-1)+(q-2)] + (q+2). Evaluated as printed for any n >= 2.
uint64_t ball_size_formula(const Word& x);

// r(x) * C(n-1-s, s); binary, n >= 2s+1. For s=1 and r(x) >= 5 this value can
// exceed the true ball size, so callers must not treat it as a strict bound
// (the tests document the exact validity region).
uint64_t ball_size_lower_bound(const Word& x, unsigned s);

// Admissible run-count interval (r(x)-(2+2s), r(x)+2s) for words in B_{1,s}(x).
std::pair<long long, long long> run_change_bounds(const Word& x, unsigned s);

// First pattern that turns x into z using up to max_subs substitutions, with
// the deletion count dictated by the length gap. Deletion positions are tried
// first-to-last; the substitutions are then forced by the leftover mismatches.
std::optional<ErrorPattern> find_del_sub_pattern(const Word& x, const Word& z, unsigned max_subs);

namespace detail {
// Shared by qary_code: balls with the substitution cap clamped to the word
// length, so length-1 inner-code corner cases stay well defined.
std::vector<Word> ball_del_sub_clamped(const Word& x, unsigned t, unsigned s, Budget* budget);
std::vector<Word> ball_transposition_both_orders(const Word& x, unsigned t, Budget* budget);
}  // namespace detail

}  // namespace delsub

#endif
