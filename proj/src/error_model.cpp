#include "delsub/error_model.hpp"

#include <algorithm>
#include <set>

#include "delsub/rational.hpp"

namespace delsub {

Word apply_del_sub(const Word& x, std::size_t d, std::optional<std::size_t> e,
                   std::optional<uint8_t> new_symbol) {
    const std::size_t n = x.size();
    if (d < 1 || d > n) throw std::invalid_argument("deletion index out of range");
    if (e.has_value() != new_symbol.has_value())
        throw std::invalid_argument("substitution index and symbol must be given together");
    std::vector<uint8_t> syms;
    syms.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (i != d - 1) syms.push_back(x[i]);
    if (e) {
        if (*e < 1 || *e > syms.size()) throw std::invalid_argument("substitution index out of range");
        if (*new_symbol >= x.q()) throw std::invalid_argument("substitution symbol out of alphabet");
        if (syms[*e - 1] == *new_symbol)
            throw std::invalid_argument("substitution must change the symbol");
        syms[*e - 1] = *new_symbol;
    }
    return Word(std::move(syms), x.q());
}

Word apply_pattern(const Word& x, const ErrorPattern& p) {
    std::vector<uint8_t> syms(x.symbols());
    auto swap_at = [&](std::size_t pos) {
        if (pos < 1 || pos + 1 > syms.size()) throw std::invalid_argument("transposition index out of range");
        std::swap(syms[pos - 1], syms[pos]);
    };
    if (p.transposed_position && p.transpose_order == TransposeOrder::before_deletion)
        swap_at(*p.transposed_position);
    std::vector<std::size_t> dels(p.deleted_positions);
    std::sort(dels.begin(), dels.end(), std::greater<>());
    for (std::size_t d : dels) {
        if (d < 1 || d > syms.size() + dels.size()) throw std::invalid_argument("deletion index out of range");
        syms.erase(syms.begin() + static_cast<std::ptrdiff_t>(d - 1));
    }
    if (p.transposed_position && p.transpose_order == TransposeOrder::after_deletion)
        swap_at(*p.transposed_position);
    for (auto [pos, val] : p.substituted_positions) {
        if (pos < 1 || pos > syms.size()) throw std::invalid_argument("substitution index out of range");
        if (val >= x.q()) throw std::invalid_argument("substitution symbol out of alphabet");
        if (syms[pos - 1] == val) throw std::invalid_argument("substitution must change the symbol");
        syms[pos - 1] = val;
    }
    return Word(std::move(syms), x.q());
}

namespace {

bool fits_packed(unsigned q, std::size_t n) {
    uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > (uint64_t{1} << 62) / q) return false;
        total *= q;
    }
    return true;
}

// Number of words within Hamming distance <= s of a fixed word of length m.
uint64_t hamming_count(std::size_t m, unsigned q, unsigned s) {
    uint64_t total = 0, qm1 = q - 1;
    for (unsigned k = 0; k <= s && k <= m; ++k) {
        Int c = binomial(m, k) * int_pow(qm1, k);
        total += c.convert_to<uint64_t>();
    }
    return total;
}

// Packed path: every candidate is a base-q key; numeric order equals
// lexicographic order because all candidates share one length.
struct KeyEmitter {
    std::vector<uint64_t> pows;  // q^{m-1-i}
    std::vector<uint64_t>* out;
    const uint8_t* word;
    unsigned q;
    std::size_t m;

    void flips(uint64_t key, std::size_t from, unsigned left) const {
        out->push_back(key);
        if (left == 0) return;
        for (std::size_t i = from; i < m; ++i) {
            for (unsigned v = 0; v < q; ++v) {
                if (v == word[i]) continue;
                const uint64_t shifted =
                    key + (uint64_t{v} - uint64_t{word[i]}) * pows[i];  // wraps consistently
                flips_inner(shifted, i + 1, left - 1);
            }
        }
    }
    // identical to flips() but never re-emits the base key
    void flips_inner(uint64_t key, std::size_t from, unsigned left) const {
        out->push_back(key);
        if (left == 0) return;
        for (std::size_t i = from; i < m; ++i)
            for (unsigned v = 0; v < q; ++v) {
                if (v == word[i]) continue;
                flips_inner(key + (uint64_t{v} - uint64_t{word[i]}) * pows[i], i + 1, left - 1);
            }
    }
};

void emit_hamming_keys(const std::vector<uint8_t>& u, unsigned q, unsigned s,
                       std::vector<uint64_t>& out) {
    const std::size_t m = u.size();
    KeyEmitter em;
    em.pows.resize(m);
    uint64_t p = 1;
    for (std::size_t i = m; i-- > 0;) {
        em.pows[i] = p;
        p *= q;
    }
    uint64_t key = 0;
    for (uint8_t sym : u) key = key * q + sym;
    em.out = &out;
    em.word = u.data();
    em.q = q;
    em.m = m;
    em.flips(key, 0, s);
}

void emit_hamming_words(const std::vector<uint8_t>& u, unsigned q, unsigned s, std::size_t from,
                        std::set<std::vector<uint8_t>>& out) {
    out.insert(u);
    if (s == 0) return;
    std::vector<uint8_t> v(u);
    for (std::size_t i = from; i < u.size(); ++i) {
        const uint8_t orig = v[i];
        for (unsigned val = 0; val < q; ++val) {
            if (val == orig) continue;
            v[i] = static_cast<uint8_t>(val);
            emit_hamming_words(v, q, s, i + 1, out);
        }
        v[i] = orig;
    }
}

std::vector<std::vector<uint8_t>> deleted_variants(const Word& x, unsigned t) {
    std::vector<std::vector<uint8_t>> out;
    if (t == 0) {
        out.push_back(x.symbols());
        return out;
    }
    for (std::size_t d = 0; d < x.size(); ++d) {
        std::vector<uint8_t> u;
        u.reserve(x.size() - 1);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (i != d) u.push_back(x[i]);
        out.push_back(std::move(u));
    }
    return out;
}

std::vector<Word> keys_to_words(std::vector<uint64_t>& keys, unsigned q, std::size_t m) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<Word> words;
    words.reserve(keys.size());
    for (uint64_t k : keys) words.push_back(word_at(k, q, m));
    return words;
}

std::vector<Word> ball_core(const Word& x, unsigned t, unsigned s, Budget* budget,
                            std::size_t* size_only) {
    if (t > 1) throw std::invalid_argument("deletion counts beyond 1 are unsupported");
    if (t > x.size()) throw std::invalid_argument("cannot delete more symbols than the word has");
    const unsigned q = x.q();
    const std::size_t m = x.size() - t;
    const unsigned s_eff = static_cast<unsigned>(std::min<std::size_t>(s, m));

    const uint64_t work = (t == 0 ? 1 : x.size()) * hamming_count(m, q, s_eff);
    if (budget) budget->charge(work);

    auto starts = deleted_variants(x, t);
    if (fits_packed(q, m)) {
        std::vector<uint64_t> keys;
        keys.reserve(work);
        for (const auto& u : starts) emit_hamming_keys(u, q, s_eff, keys);
        if (size_only) {
            std::sort(keys.begin(), keys.end());
            *size_only = static_cast<std::size_t>(
                std::unique(keys.begin(), keys.end()) - keys.begin());
            return {};
        }
        return keys_to_words(keys, q, m);
    }
    std::set<std::vector<uint8_t>> acc;
    for (const auto& u : starts) emit_hamming_words(u, q, s_eff, 0, acc);
    if (size_only) {
        *size_only = acc.size();
        return {};
    }
    std::vector<Word> words;
    words.reserve(acc.size());
    for (const auto& v : acc) words.emplace_back(v, q);
    return words;
}

void check_spec(const Word& x, const BallSpec& spec) {
    if (spec.max_adjacent_transpositions != 0)
        throw std::invalid_argument("use ball_del_transposition for transposition balls");
    if (spec.deletions + spec.max_substitutions > x.size())
        throw std::invalid_argument("ball spec infeasible for word length");
}

}  // namespace

std::vector<Word> ball_del_sub(const Word& x, const BallSpec& spec, Budget* budget) {
    check_spec(x, spec);
    return ball_core(x, spec.deletions, spec.max_substitutions, budget, nullptr);
}

std::size_t ball_del_sub_size(const Word& x, const BallSpec& spec, Budget* budget) {
    check_spec(x, spec);
    std::size_t size = 0;
    ball_core(x, spec.deletions, spec.max_substitutions, budget, &size);
    return size;
}

std::vector<Word> ball_del_transposition(const Word& x, unsigned t, Budget* budget) {
    if (x.q() != 2) throw std::invalid_argument("transposition balls are defined for binary words");
    if (x.size() < 2) throw std::invalid_argument("transposition needs length >= 2");
    if (t > 1) throw std::invalid_argument("deletion counts beyond 1 are unsupported");
    const std::size_t n = x.size();
    const std::size_t m = n - t;
    if (budget) budget->charge(n * (t == 0 ? 1 : n));

    std::vector<uint64_t> keys;
    std::vector<uint8_t> w(x.symbols());
    for (std::size_t sw = 0; sw <= n - 1; ++sw) {  // sw == 0 means no swap
        std::vector<uint8_t> v(w);
        if (sw > 0) std::swap(v[sw - 1], v[sw]);
        if (t == 0) {
            uint64_t key = 0;
            for (uint8_t sym : v) key = key * 2 + sym;
            keys.push_back(key);
        } else {
            for (std::size_t d = 0; d < n; ++d) {
                uint64_t key = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (i != d) key = key * 2 + v[i];
                keys.push_back(key);
            }
        }
    }
    return keys_to_words(keys, 2, m);
}

uint64_t ball_size_formula(const Word& x) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("ball size formula needs length >= 2");
    const long long q = x.q();
    const long long r = run_count(x);
    if (r == 1) return static_cast<uint64_t>((static_cast<long long>(n) - 1) * (q - 1) + 1);
    const long long v = r * ((static_cast<long long>(n) - 3) * (q - 1) + (q - 2)) + (q + 2);
    return static_cast<uint64_t>(v);
}

uint64_t ball_size_lower_bound(const Word& x, unsigned s) {
    if (x.q() != 2) throw std::invalid_argument("lower bound is stated for binary words");
    if (s < 1) throw std::invalid_argument("substitution count must be positive");
    const std::size_t n = x.size();
    if (n < 2 * static_cast<std::size_t>(s) + 1)
        throw std::invalid_argument("word too short for the stated bound");
    Int v = Int(run_count(x)) * binomial(n - 1 - s, s);
    return v.convert_to<uint64_t>();
}

std::pair<long long, long long> run_change_bounds(const Word& x, unsigned s) {
    const long long r = run_count(x);
    return {r - (2 + 2ll * s), r + 2ll * s};
}

namespace {

std::optional<ErrorPattern> subs_between(const std::vector<uint8_t>& u, const Word& z,
                                         unsigned max_subs, std::size_t deleted) {
    std::vector<std::pair<std::size_t, uint8_t>> subs;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == z[i]) continue;
        if (subs.size() == max_subs) return std::nullopt;
        subs.emplace_back(i + 1, z[i]);
    }
    ErrorPattern p;
    if (deleted) p.deleted_positions = {deleted};
    p.substituted_positions = std::move(subs);
    return p;
}

}  // namespace

std::optional<ErrorPattern> find_del_sub_pattern(const Word& x, const Word& z,
                                                 unsigned max_subs) {
    if (x.q() != z.q()) throw std::invalid_argument("alphabet mismatch");
    if (z.size() == x.size()) return subs_between(x.symbols(), z, max_subs, 0);
    if (z.size() + 1 != x.size()) return std::nullopt;
    for (std::size_t d = 1; d <= x.size(); ++d) {
        std::vector<uint8_t> u(x.symbols());
        u.erase(u.begin() + static_cast<std::ptrdiff_t>(d - 1));
        if (auto p = subs_between(u, z, max_subs, d)) return p;
    }
    return std::nullopt;
}

namespace detail {

std::vector<Word> ball_del_sub_clamped(const Word& x, unsigned t, unsigned s, Budget* budget) {
    return ball_core(x, t, s, budget, nullptr);
}

std::vector<Word> ball_transposition_both_orders(const Word& x, unsigned t, Budget* budget) {
    const std::size_t n = x.size();
    const unsigned q = x.q();
    if (t > 1) throw std::invalid_argument("deletion counts beyond 1 are unsupported");
    if (t > n) throw std::invalid_argument("cannot delete more symbols than the word has");
    const std::size_t m = n - t;
    if (budget) budget->charge(2 * (n + 1) * (t == 0 ? 1 : n));

    std::set<std::vector<uint8_t>> acc;
    auto add_deletions = [&](const std::vector<uint8_t>& v, auto&& sink) {
        if (t == 0) {
            sink(v);
            return;
        }
        for (std::size_t d = 0; d < v.size(); ++d) {
            std::vector<uint8_t> u;
            u.reserve(v.size() - 1);
            for (std::size_t i = 0; i < v.size(); ++i)
                if (i != d) u.push_back(v[i]);
            sink(u);
        }
    };
    // swap (or not), then delete
    for (std::size_t sw = 0; sw + 1 <= (n == 0 ? 0 : n - 1) + 1; ++sw) {
        std::vector<uint8_t> v(x.symbols());
        if (sw > 0) {
            if (sw >= n) break;
            std::swap(v[sw - 1], v[sw]);
        }
        add_deletions(v, [&](const std::vector<uint8_t>& u) { acc.insert(u); });
    }
    // delete, then swap (or not)
    add_deletions(x.symbols(), [&](const std::vector<uint8_t>& u) {
        acc.insert(u);
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            std::vector<uint8_t> v(u);
            std::swap(v[i], v[i + 1]);
            acc.insert(v);
        }
    });
    std::vector<Word> out;
    out.reserve(acc.size());
    for (const auto& v : acc) out.emplace_back(v, q);
    (void)m;
    return out;
}

}  // namespace detail

}  // namespace delsub
