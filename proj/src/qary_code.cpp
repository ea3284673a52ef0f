#include "delsub/qary_code.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "delsub/error_model.hpp"
#include "delsub/parallel.hpp"

namespace delsub {

std::vector<Word> combined_inner_ball(const Word& u, Budget* budget) {
    std::vector<Word> ball = detail::ball_del_sub_clamped(u, 1, 1, budget);
    std::vector<Word> swaps = detail::ball_transposition_both_orders(u, 1, budget);
    ball.insert(ball.end(), swaps.begin(), swaps.end());
    std::sort(ball.begin(), ball.end());
    ball.erase(std::unique(ball.begin(), ball.end(),
                           [](const Word& a, const Word& b) { return a == b; }),
               ball.end());
    return ball;
}

InnerSignatureCode::InnerSignatureCode(std::size_t n, std::vector<Word> words,
                                       Provenance provenance)
    : n_(n), words_(std::move(words)), provenance_(provenance) {
    for (const Word& w : words_) keys_.insert(index_of(w));
}

bool InnerSignatureCode::contains(const Word& u) const {
    if (u.q() != 2 || u.size() != n_) return false;
    return keys_.count(index_of(u)) > 0;
}

namespace {

void verify_inner_invariant(std::size_t n, const std::vector<Word>& words, Budget* budget) {
    std::unordered_map<uint64_t, std::size_t> occupied;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Word& w = words[i];
        if (w.q() != 2 || w.size() != n)
            throw std::invalid_argument("inner code words must be binary of the stated length");
        for (const Word& b : combined_inner_ball(w, budget)) {
            const auto [it, fresh] = occupied.emplace(index_of(b), i);
            if (!fresh && it->second != i)
                throw std::invalid_argument(
                    "inner code rejected: words " + words[it->second].str() + " and " + w.str() +
                    " share the corrupted word " + b.str());
        }
    }
}

}  // namespace

InnerSignatureCode InnerSignatureCode::greedy_search(std::size_t n, Budget* budget) {
    const uint64_t total = space_size(2, n);
    std::vector<Word> taken;
    std::unordered_set<uint64_t> occupied;
    for (uint64_t idx = 0; idx < total; ++idx) {
        const Word u = word_at(idx, 2, n);
        const std::vector<Word> ball = combined_inner_ball(u, budget);
        bool clashes = false;
        for (const Word& b : ball)
            if (occupied.count(index_of(b))) {
                clashes = true;
                break;
            }
        if (clashes) continue;
        for (const Word& b : ball) occupied.insert(index_of(b));
        taken.push_back(u);
    }
    verify_inner_invariant(n, taken, budget);
    return InnerSignatureCode(n, std::move(taken), Provenance::searched);
}

InnerSignatureCode InnerSignatureCode::from_words(std::size_t n, std::vector<Word> words,
                                                  Budget* budget) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end(),
                            [](const Word& a, const Word& b) { return a == b; }),
                words.end());
    verify_inner_invariant(n, words, budget);
    return InnerSignatureCode(n, std::move(words), Provenance::external);
}

InnerSignatureCode InnerSignatureCode::load(std::istream& in, Budget* budget) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("inner code file is empty");
    if (line.rfind("n=", 0) != 0)
        throw std::invalid_argument("inner code file must start with 'n=<int>'");
    const std::size_t n = static_cast<std::size_t>(std::stoull(line.substr(2)));
    std::vector<Word> words;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        words.push_back(Word::parse(line, 2));
    }
    return from_words(n, std::move(words), budget);
}

void InnerSignatureCode::save(std::ostream& out) const {
    out << "n=" << n_ << "\n";
    for (const Word& w : words_) out << w.str() << "\n";
}

QaryDelSubCode::QaryDelSubCode(std::size_t n, unsigned q, QaryCodeParams params,
                               InnerSignatureCode inner)
    : n_(n), q_(q), params_(params), inner_(std::move(inner)) {
    if (n < 1) throw std::invalid_argument("code length must be positive");
    if (q < 2) throw std::invalid_argument("alphabet needs at least two symbols");
    if (inner_.length() != n)
        throw std::invalid_argument("inner code length must match the code length");
    const auto mods = moduli();
    const long long residues[3] = {params.a, params.b, params.c};
    for (int i = 0; i < 3; ++i)
        if (residues[i] < 0 || residues[i] >= mods[i])
            throw std::invalid_argument("residue out of range for its modulus");
}

std::array<long long, 3> QaryDelSubCode::moduli() const {
    const long long n = static_cast<long long>(n_);
    const long long q = q_;
    return {2 * q + 1, 2 * n * q + 1, 2 * n * n * q + 1};
}

std::array<long long, 3> QaryDelSubCode::syndromes(const Word& x) const {
    if (x.q() != q_ || x.size() != n_)
        throw std::invalid_argument("expected a word of the code length and alphabet");
    const auto mods = moduli();
    long long sa = 0, sb = 0, sc = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        const long long j = static_cast<long long>(i + 1);
        const long long v = x[i];
        sa += v;
        sb += j * v;
        sc += j * j * v;
    }
    return {sa % mods[0], sb % mods[1], sc % mods[2]};
}

bool QaryDelSubCode::contains(const Word& x) const {
    if (x.q() != q_ || x.size() != n_) return false;
    const auto s = syndromes(x);
    if (s[0] != params_.a || s[1] != params_.b || s[2] != params_.c) return false;
    return inner_.contains(binary_signature(x));
}

std::vector<Word> QaryDelSubCode::enumerate(Budget* budget, unsigned threads) const {
    const uint64_t total = space_size(q_, n_);
    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        if (budget) budget->charge(hi - lo);
        std::vector<uint64_t> hits;
        for (uint64_t idx = lo; idx < hi; ++idx)
            if (contains(word_at(idx, q_, n_))) hits.push_back(idx);
        return hits;
    };
    auto combine = [](std::vector<uint64_t> acc, std::vector<uint64_t> part) {
        acc.insert(acc.end(), part.begin(), part.end());
        return acc;
    };
    const std::vector<uint64_t> hits =
        parallel_index_reduce(0, total, std::vector<uint64_t>{}, map_chunk, combine, threads);
    std::vector<Word> out;
    out.reserve(hits.size());
    for (uint64_t idx : hits) out.push_back(word_at(idx, q_, n_));
    return out;
}

const char* signature_error_kind_name(SignatureErrorKind k) {
    switch (k) {
        case SignatureErrorKind::deletion_only:
            return "deletion_only";
        case SignatureErrorKind::deletion_substitution:
            return "deletion_substitution";
        case SignatureErrorKind::deletion_transposition:
            return "deletion_transposition";
    }
    return "unknown";
}

namespace {

std::size_t hamming(const Word& a, const Word& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

Word delete_at(const Word& w, std::size_t d) {
    std::vector<uint8_t> v(w.symbols());
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(d - 1));
    return Word(std::move(v), w.q());
}

}  // namespace

std::optional<SignatureErrorKind> classify_signature_error(const Word& x, const Word& y) {
    if (x.q() != y.q()) throw std::invalid_argument("alphabet mismatch");
    if (y.size() + 1 != x.size())
        throw std::invalid_argument("second word must be one symbol shorter");
    const Word sx = binary_signature(x);
    const Word sy = binary_signature(y);

    for (std::size_t d = 1; d <= sx.size(); ++d)
        if (delete_at(sx, d) == sy) return SignatureErrorKind::deletion_only;

    for (std::size_t d = 1; d <= sx.size(); ++d)
        if (hamming(delete_at(sx, d), sy) <= 1) return SignatureErrorKind::deletion_substitution;

    for (const Word& b : detail::ball_transposition_both_orders(sx, 1, nullptr))
        if (b == sy) return SignatureErrorKind::deletion_transposition;

    return std::nullopt;
}

uint64_t count_signature_members(std::size_t n, unsigned q, const InnerSignatureCode& inner,
                                 Budget* budget, unsigned threads) {
    if (inner.length() != n)
        throw std::invalid_argument("inner code length must match the word length");
    const uint64_t total = space_size(q, n);
    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        if (budget) budget->charge(hi - lo);
        uint64_t count = 0;
        for (uint64_t idx = lo; idx < hi; ++idx)
            if (inner.contains(binary_signature(word_at(idx, q, n)))) ++count;
        return count;
    };
    return parallel_index_reduce(
        0, total, uint64_t{0}, map_chunk, [](uint64_t a, uint64_t b) { return a + b; }, threads);
}

std::pair<QaryCodeParams, uint64_t> best_qary_params(std::size_t n, unsigned q,
                                                     const InnerSignatureCode& inner,
                                                     Budget* budget, unsigned threads) {
    const QaryDelSubCode probe(n, q, QaryCodeParams{}, inner);
    const auto mods = probe.moduli();
    const uint64_t total = space_size(q, n);

    using Counts = std::unordered_map<uint64_t, uint32_t>;
    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        if (budget) budget->charge(hi - lo);
        Counts counts;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            const Word x = word_at(idx, q, n);
            if (!inner.contains(binary_signature(x))) continue;
            const auto s = probe.syndromes(x);
            const uint64_t key = (static_cast<uint64_t>(s[0]) * mods[1] + s[1]) * mods[2] + s[2];
            ++counts[key];
        }
        return counts;
    };
    auto combine = [](Counts acc, Counts part) {
        for (const auto& [key, cnt] : part) acc[key] += cnt;
        return acc;
    };
    const Counts counts = parallel_index_reduce(0, total, Counts{}, map_chunk, combine, threads);

    uint64_t best_key = 0;
    uint32_t best_count = 0;
    for (const auto& [key, cnt] : counts)
        if (cnt > best_count || (cnt == best_count && key < best_key)) {
            best_key = key;
            best_count = cnt;
        }

    QaryCodeParams params;
    params.c = static_cast<long long>(best_key % mods[2]);
    const uint64_t rest = best_key / mods[2];
    params.b = static_cast<long long>(rest % mods[1]);
    params.a = static_cast<long long>(rest / mods[1]);
    return {params, best_count};
}

DecodeOutcome decode_qary(const Word& received, const QaryDelSubCode& code) {
    const std::size_t n = code.length();
    const unsigned q = code.alphabet();
    if (received.q() != q) throw std::invalid_argument("alphabet mismatch");
    if (received.size() + 1 != n)
        throw std::invalid_argument("decoder accepts only words one symbol short");

    std::vector<Word> candidates;
    auto try_candidate = [&](const Word& w) {
        if (code.contains(w)) candidates.push_back(w);
    };

    std::vector<std::vector<uint8_t>> bases;
    bases.push_back(received.symbols());
    for (std::size_t e = 0; e < received.size(); ++e)
        for (unsigned v = 0; v < q; ++v) {
            if (v == received[e]) continue;
            auto b = received.symbols();
            b[e] = static_cast<uint8_t>(v);
            bases.push_back(std::move(b));
        }
    for (const auto& base : bases)
        for (std::size_t pos = 0; pos < n; ++pos)
            for (unsigned sym = 0; sym < q; ++sym) {
                auto v = base;
                v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos),
                         static_cast<uint8_t>(sym));
                try_candidate(Word(std::move(v), q));
            }

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Word& a, const Word& b) { return a == b; }),
                     candidates.end());
    if (candidates.empty())
        return {DecodeStatus::not_a_codeword_channel_output, std::nullopt, std::nullopt, {}};
    if (candidates.size() > 1)
        return {DecodeStatus::ambiguous, std::nullopt, std::nullopt, std::move(candidates)};
    const Word x = candidates.front();
    return {DecodeStatus::decoded, x, find_del_sub_pattern(x, received, 1), {}};
}

}  // namespace delsub
