#ifndef DELSUB_BOUNDS_HPP
#define DELSUB_BOUNDS_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "delsub/budget.hpp"
#include "delsub/rational.hpp"
#include "delsub/word.hpp"

namespace delsub {

Rat single_sub_weight(const Word& y);
Rat multi_sub_weight(const Word& y, unsigned s);

// A named weight assignment on the length n-1 output space of the
// one-deletion, up-to-s-substitution channel acting on length-n words.
struct TransversalWeights {
    enum class Kind { single_sub_qary, s_sub_binary };
    Kind kind;
    unsigned q;
    std::size_t n;  // code length; weights live on words of length n-1
    unsigned s;

    static TransversalWeights single_sub(unsigned q, std::size_t n);
    static TransversalWeights multi_sub_binary(std::size_t n, unsigned s);
    Rat operator()(const Word& y) const;
};

struct TransversalCertificate {
    bool pass = false;
    uint64_t words_checked = 0;
    Rat min_sum;                       // smallest per-ball weight sum encountered
    std::optional<Word> min_word;      // lexicographically first word attaining it
    std::optional<Word> violating_word;  // first word whose sum dips below 1
    Rat violating_sum;
};

using WeightFn = std::function<Rat(const Word&)>;

// Checks that the weight sum over the one-deletion s-substitution ball of
// every x in the length-n space is at least 1, in exact arithmetic.
TransversalCertificate verify_transversal(std::size_t n, unsigned q, unsigned s,
                                          const WeightFn& weight, Budget* budget = nullptr,
                                          unsigned threads = 1);
TransversalCertificate verify_transversal(const TransversalWeights& w, Budget* budget = nullptr,
                                          unsigned threads = 1);

// Cardinality cap for single-deletion single-substitution codes over an
// alphabet of size q: 3 q^{n-1} / ((n-5)(n-3)(q-1)) + 5q, for q <= n, n >= 6.
Rat single_sub_size_bound(std::size_t n, unsigned q);

// Binary cap for s substitutions:
// s!(2s+1) / ((n-2s)^s (n-1)) * (2^n + 2(n-1)^{2s+1}/(2s+1)), for n >= 2s+1.
Rat multi_sub_size_bound(std::size_t n, unsigned s);

struct HarmonicBoundResult {
    bool holds = false;
    Rat lhs;    // sum_{k=1}^n C(n,k)(q-1)^k / k
    Rat rhs;    // q^{n+1} / ((q-1)(n-2))
    Rat slack;  // rhs - lhs
};
HarmonicBoundResult check_harmonic_binomial_bound(std::size_t n, unsigned q);

// Total weight of the full output space, computed by counting words per run
// count rather than enumerating. Supports s=1 for any q, and q=2 for any s.
Rat exact_weight_sum(std::size_t n, unsigned q, unsigned s);

struct BoundReport {
    std::size_t n = 0;
    unsigned q = 0;
    unsigned s = 0;
    std::optional<Rat> closed_form_bound;
    Rat weight_sum;
    uint64_t greedy_code_size = 0;
    std::optional<uint64_t> constructed_code_size;
};

}  // namespace delsub

#endif
