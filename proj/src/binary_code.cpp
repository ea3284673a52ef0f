#include "delsub/binary_code.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "delsub/parallel.hpp"

namespace delsub {

BinaryDelSubCode::BinaryDelSubCode(std::size_t n, BinaryCodeParams params)
    : n_(n), params_(params) {
    if (n < 1) throw std::invalid_argument("code length must be positive");
    const auto mods = moduli();
    const long long residues[4] = {params.a, params.b, params.c, params.d};
    for (int i = 0; i < 4; ++i)
        if (residues[i] < 0 || residues[i] >= mods[i])
            throw std::invalid_argument("residue out of range for its modulus");
    alpha_.resize(n);
    beta_.resize(n);
    eta_.resize(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const long long v = static_cast<long long>(i);
        alpha_[i - 1] = v;
        beta_[i - 1] = v * (v + 1) / 2;
        eta_[i - 1] = v * (v + 1) * (2 * v + 1) / 6;
    }
}

std::array<long long, 4> BinaryDelSubCode::moduli() const {
    const long long n = static_cast<long long>(n_);
    return {3 * n + 1, 3 * n * n + 1, 3 * n * n * n + 1, 5};
}

std::array<long long, 4> BinaryDelSubCode::syndromes(const Word& x) const {
    if (x.q() != 2 || x.size() != n_)
        throw std::invalid_argument("expected a binary word of the code length");
    const auto mods = moduli();
    long long sa = 0, sb = 0, sc = 0, sd = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (!x[i]) continue;
        sa += alpha_[i];
        sb += beta_[i];
        sc += eta_[i];
        sd += 1;
    }
    return {sa % mods[0], sb % mods[1], sc % mods[2], sd % mods[3]};
}

bool BinaryDelSubCode::contains(const Word& x) const {
    const auto s = syndromes(x);
    return s[0] == params_.a && s[1] == params_.b && s[2] == params_.c && s[3] == params_.d;
}

std::vector<CongruentConstraint> BinaryDelSubCode::constraints() const {
    const auto mods = moduli();
    return {
        CongruentConstraint(alpha_, params_.a, mods[0]),
        CongruentConstraint(beta_, params_.b, mods[1]),
        CongruentConstraint(eta_, params_.c, mods[2]),
        CongruentConstraint(std::vector<long long>(n_, 1), params_.d, mods[3]),
    };
}

std::vector<Word> BinaryDelSubCode::enumerate(Budget* budget, unsigned threads) const {
    return enumerate_congruent(constraints(), 2, n_, budget, threads);
}

BinaryDelSubCode BinaryDelSubCode::parse_spec(const std::string& text, Budget* budget,
                                              unsigned threads) {
    std::optional<std::size_t> n;
    BinaryCodeParams params;
    bool have_a = false, have_b = false, have_c = false, have_d = false, auto_params = false;
    std::istringstream fields(text);
    std::string field;
    while (std::getline(fields, field, ';')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("code spec field lacks '=': " + field);
        const std::string key = field.substr(0, eq);
        const std::string val = field.substr(eq + 1);
        if (key == "n") {
            n = static_cast<std::size_t>(std::stoull(val));
        } else if (key == "params") {
            if (val != "auto") throw std::invalid_argument("params accepts only 'auto'");
            auto_params = true;
        } else if (key == "a") {
            params.a = std::stoll(val);
            have_a = true;
        } else if (key == "b") {
            params.b = std::stoll(val);
            have_b = true;
        } else if (key == "c") {
            params.c = std::stoll(val);
            have_c = true;
        } else if (key == "d") {
            params.d = std::stoll(val);
            have_d = true;
        } else {
            throw std::invalid_argument("unknown code spec field: " + key);
        }
    }
    if (!n) throw std::invalid_argument("code spec needs n=<int>");
    if (auto_params) {
        if (have_a || have_b || have_c || have_d)
            throw std::invalid_argument("params=auto excludes explicit residues");
        return BinaryDelSubCode(*n, best_binary_params(*n, budget, threads).first);
    }
    if (!(have_a && have_b && have_c && have_d))
        throw std::invalid_argument("code spec needs a, b, c and d (or params=auto)");
    return BinaryDelSubCode(*n, params);
}

std::pair<BinaryCodeParams, uint64_t> best_binary_params(std::size_t n, Budget* budget,
                                                         unsigned threads) {
    const BinaryDelSubCode probe(n, BinaryCodeParams{});
    const auto mods = probe.moduli();
    const uint64_t total = space_size(2, n);

    using Counts = std::unordered_map<uint64_t, uint32_t>;
    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        if (budget) budget->charge(hi - lo);
        Counts counts;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            const auto s = probe.syndromes(word_at(idx, 2, n));
            const uint64_t key =
                ((static_cast<uint64_t>(s[0]) * mods[1] + s[1]) * mods[2] + s[2]) * 5 + s[3];
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

    BinaryCodeParams params;
    params.d = static_cast<long long>(best_key % 5);
    uint64_t rest = best_key / 5;
    params.c = static_cast<long long>(rest % mods[2]);
    rest /= mods[2];
    params.b = static_cast<long long>(rest % mods[1]);
    params.a = static_cast<long long>(rest / mods[1]);
    return {params, best_count};
}

Word encode_message(uint64_t message_index, const std::vector<Word>& codebook) {
    if (message_index >= codebook.size())
        throw std::out_of_range("message index exceeds codebook size");
    return codebook[message_index];
}

uint64_t codeword_rank(const Word& codeword, const std::vector<Word>& codebook) {
    const auto it = std::lower_bound(codebook.begin(), codebook.end(), codeword);
    if (it == codebook.end() || !(*it == codeword))
        throw std::invalid_argument("word is not in the codebook");
    return static_cast<uint64_t>(it - codebook.begin());
}

namespace {

Word insert_symbol(const Word& w, std::size_t pos, uint8_t sym) {
    std::vector<uint8_t> v(w.symbols());
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos - 1), sym);
    return Word(std::move(v), w.q());
}

void add_candidate(const Word& w, const BinaryDelSubCode& code, std::vector<Word>& out) {
    if (code.contains(w)) out.push_back(w);
}

std::vector<Word> dedup_sorted(std::vector<Word> words) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end(),
                            [](const Word& a, const Word& b) { return a == b; }),
                words.end());
    return words;
}

DecodeOutcome finish(std::vector<Word> candidates, const Word& received, std::size_t n) {
    candidates = dedup_sorted(std::move(candidates));
    if (candidates.empty())
        return {DecodeStatus::not_a_codeword_channel_output, std::nullopt, std::nullopt, {}};
    if (candidates.size() > 1)
        return {DecodeStatus::ambiguous, std::nullopt, std::nullopt, std::move(candidates)};
    const Word& x = candidates.front();
    std::optional<ErrorPattern> pattern;
    if (received.size() <= n) pattern = find_del_sub_pattern(x, received, 1);
    // One insertion plus an optional substitution has no deletion-based
    // pattern form, so that case reports the codeword alone.
    return {DecodeStatus::decoded, x, std::move(pattern), {}};
}

}  // namespace

DecodeOutcome decode_binary(const Word& received, const BinaryDelSubCode& code) {
    if (received.q() != 2) throw std::invalid_argument("decoder expects a binary word");
    const std::size_t n = code.length();
    const std::size_t m = received.size();
    if (m + 1 != n && m != n && m != n + 1)
        throw std::invalid_argument("received length must be n-1, n or n+1");

    std::vector<Word> candidates;
    if (m + 1 == n) {
        // Reverse one optional substitution, then one insertion. The cheap
        // all-ones congruence screens candidates before the full test.
        const long long d_target = code.params().d;
        std::vector<std::vector<uint8_t>> bases;
        bases.push_back(received.symbols());
        for (std::size_t e = 0; e < m; ++e) {
            auto v = received.symbols();
            v[e] ^= 1;
            bases.push_back(std::move(v));
        }
        for (const auto& base : bases) {
            long long weight = 0;
            for (uint8_t bit : base) weight += bit;
            const Word zr(base, 2);
            for (std::size_t pos = 1; pos <= n; ++pos)
                for (uint8_t bit = 0; bit <= 1; ++bit) {
                    if ((weight + bit) % 5 != d_target) continue;
                    add_candidate(insert_symbol(zr, pos, bit), code, candidates);
                }
        }
    } else if (m == n) {
        add_candidate(received, code, candidates);
        for (std::size_t e = 0; e < n; ++e) {
            auto v = received.symbols();
            v[e] ^= 1;
            add_candidate(Word(std::move(v), 2), code, candidates);
        }
    } else {
        for (std::size_t d = 1; d <= m; ++d) {
            std::vector<uint8_t> u(received.symbols());
            u.erase(u.begin() + static_cast<std::ptrdiff_t>(d - 1));
            add_candidate(Word(u, 2), code, candidates);
            for (std::size_t e = 0; e < u.size(); ++e) {
                auto v = u;
                v[e] ^= 1;
                add_candidate(Word(std::move(v), 2), code, candidates);
            }
        }
    }
    return finish(std::move(candidates), received, n);
}

}  // namespace delsub
