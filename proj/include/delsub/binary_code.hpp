#ifndef DELSUB_BINARY_CODE_HPP
#define DELSUB_BINARY_CODE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "delsub/budget.hpp"
#include "delsub/congruent.hpp"
#include "delsub/decode.hpp"
#include "delsub/word.hpp"

namespace delsub {

struct BinaryCodeParams {
    long long a = 0;
    long long b = 0;
    long long c = 0;
    long long d = 0;
};

// Binary single-deletion single-substitution code cut out by four congruences
// with weight vectors (i), (i(i+1)/2), (sum of squares up to i), and all-ones,
// taken modulo 3n+1, 3n^2+1, 3n^3+1 and 5 respectively.
class BinaryDelSubCode {
public:
    BinaryDelSubCode(std::size_t n, BinaryCodeParams params);

    std::size_t length() const { return n_; }
    const BinaryCodeParams& params() const { return params_; }
    std::array<long long, 4> moduli() const;

    std::array<long long, 4> syndromes(const Word& x) const;
    bool contains(const Word& x) const;
    std::vector<CongruentConstraint> constraints() const;

    // All codewords in lexicographic order.
    std::vector<Word> enumerate(Budget* budget = nullptr, unsigned threads = 1) const;

    // Text forms "n=12;a=0;b=168;c=1080;d=1" and "n=12;params=auto". The auto
    // form runs the exhaustive parameter search.
    static BinaryDelSubCode parse_spec(const std::string& text, Budget* budget = nullptr,
                                       unsigned threads = 1);

private:
    std::size_t n_;
    BinaryCodeParams params_;
    std::vector<long long> alpha_, beta_, eta_;
};

// Residues maximizing the code size, found by one syndrome-bucketing pass
// over the whole space; ties resolved toward the smallest (a, b, c, d).
std::pair<BinaryCodeParams, uint64_t> best_binary_params(std::size_t n, Budget* budget = nullptr,
                                                         unsigned threads = 1);

// Ranked-codebook encoder: message index -> index-th codeword.
Word encode_message(uint64_t message_index, const std::vector<Word>& codebook);
uint64_t codeword_rank(const Word& codeword, const std::vector<Word>& codebook);

// Accepts lengths n-1 (one deletion, up to one substitution), n (up to one
// substitution) and n+1 (one insertion, up to one substitution).
DecodeOutcome decode_binary(const Word& received, const BinaryDelSubCode& code);

}  // namespace delsub

#endif
