#ifndef DELSUB_QARY_CODE_HPP
#define DELSUB_QARY_CODE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "delsub/budget.hpp"
#include "delsub/decode.hpp"
#include "delsub/word.hpp"

namespace delsub {

// Binary code protecting the signature layer: distinct members keep disjoint
// combined balls, where a combined ball gathers everything reachable by one
// deletion with at most one substitution, or by one deletion with at most one
// adjacent transposition applied before or after the deletion.
class InnerSignatureCode {
public:
    enum class Provenance { searched, external };

    // Lexicographic greedy scan; the result satisfies the disjointness
    // invariant by construction and is re-checked before being returned.
    static InnerSignatureCode greedy_search(std::size_t n, Budget* budget = nullptr);

    // Accepts an externally supplied member list after re-verifying the
    // invariant; rejects the list otherwise.
    static InnerSignatureCode from_words(std::size_t n, std::vector<Word> words,
                                         Budget* budget = nullptr);

    // File format: header line "n=<int>", then one binary word per line.
    static InnerSignatureCode load(std::istream& in, Budget* budget = nullptr);
    void save(std::ostream& out) const;

    std::size_t length() const { return n_; }
    Provenance provenance() const { return provenance_; }
    const std::vector<Word>& words() const { return words_; }
    bool contains(const Word& u) const;

private:
    InnerSignatureCode(std::size_t n, std::vector<Word> words, Provenance provenance);

    std::size_t n_;
    std::vector<Word> words_;
    std::unordered_set<uint64_t> keys_;
    Provenance provenance_;
};

// Sorted union of the deletion-substitution ball and both transposition-order
// deletion-transposition balls.
std::vector<Word> combined_inner_ball(const Word& u, Budget* budget = nullptr);

struct QaryCodeParams {
    long long a = 0;
    long long b = 0;
    long long c = 0;
};

// Length-n code over q symbols: the binary signature must belong to the inner
// code and the symbol sums weighted by 1, j and j^2 must match the residues
// a, b, c modulo 2q+1, 2nq+1 and 2n^2q+1.
class QaryDelSubCode {
public:
    QaryDelSubCode(std::size_t n, unsigned q, QaryCodeParams params, InnerSignatureCode inner);

    std::size_t length() const { return n_; }
    unsigned alphabet() const { return q_; }
    const QaryCodeParams& params() const { return params_; }
    const InnerSignatureCode& inner() const { return inner_; }
    std::array<long long, 3> moduli() const;

    std::array<long long, 3> syndromes(const Word& x) const;
    bool contains(const Word& x) const;
    std::vector<Word> enumerate(Budget* budget = nullptr, unsigned threads = 1) const;

private:
    std::size_t n_;
    unsigned q_;
    QaryCodeParams params_;
    InnerSignatureCode inner_;
};

enum class SignatureErrorKind { deletion_only, deletion_substitution, deletion_transposition };
const char* signature_error_kind_name(SignatureErrorKind k);

// How one deletion plus at most one substitution on a word shows up on its
// signature. Returns the first matching kind in the order above; an empty
// result disproves the classification and must never occur.
std::optional<SignatureErrorKind> classify_signature_error(const Word& x, const Word& y);

uint64_t count_signature_members(std::size_t n, unsigned q, const InnerSignatureCode& inner,
                                 Budget* budget = nullptr, unsigned threads = 1);

std::pair<QaryCodeParams, uint64_t> best_qary_params(std::size_t n, unsigned q,
                                                     const InnerSignatureCode& inner,
                                                     Budget* budget = nullptr,
                                                     unsigned threads = 1);

// Accepts only length n-1 inputs (one deletion happened, maybe a substitution).
DecodeOutcome decode_qary(const Word& received, const QaryDelSubCode& code);

}  // namespace delsub

#endif
