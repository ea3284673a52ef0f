#include "delsub/congruent.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "delsub/parallel.hpp"

namespace delsub {

CongruentConstraint::CongruentConstraint(std::vector<long long> gamma_, long long a_, long long N_)
    : gamma(std::move(gamma_)), a(a_), N(N_) {
    if (N < 1) throw std::invalid_argument("modulus must be at least 1");
    if (a < 0 || a >= N) throw std::invalid_argument("residue must lie in [0, N)");
}

CongruentConstraint CongruentConstraint::parse(const std::string& text) {
    std::vector<long long> gamma;
    std::optional<long long> a, N;
    std::istringstream fields(text);
    std::string field;
    while (std::getline(fields, field, ';')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("constraint field lacks '=': " + field);
        const std::string key = field.substr(0, eq);
        const std::string val = field.substr(eq + 1);
        if (key == "gamma") {
            std::istringstream nums(val);
            std::string tok;
            while (std::getline(nums, tok, ',')) gamma.push_back(std::stoll(tok));
        } else if (key == "a") {
            a = std::stoll(val);
        } else if (key == "N") {
            N = std::stoll(val);
        } else {
            throw std::invalid_argument("unknown constraint field: " + key);
        }
    }
    if (gamma.empty() || !a || !N)
        throw std::invalid_argument("constraint needs gamma, a and N");
    return CongruentConstraint(std::move(gamma), *a, *N);
}

std::string CongruentConstraint::str() const {
    std::ostringstream out;
    out << "gamma=";
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (i) out << ',';
        out << gamma[i];
    }
    out << ";a=" << a << ";N=" << N;
    return out.str();
}

long long weighted_residue(const Word& x, const std::vector<long long>& gamma, long long N) {
    if (x.size() != gamma.size()) throw std::invalid_argument("weight vector length mismatch");
    if (N < 1) throw std::invalid_argument("modulus must be at least 1");
    long long sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sum = (sum + gamma[i] % N * x[i]) % N;
    return (sum % N + N) % N;
}

bool is_member(const Word& x, const CongruentConstraint& c) {
    return weighted_residue(x, c.gamma, c.N) == c.a;
}

std::vector<Word> enumerate_congruent(const std::vector<CongruentConstraint>& constraints,
                                      unsigned q, std::size_t n, Budget* budget,
                                      unsigned threads) {
    for (const auto& c : constraints)
        if (c.gamma.size() != n)
            throw std::invalid_argument("constraint length does not match word length");
    const uint64_t total = space_size(q, n);
    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        if (budget) budget->charge(hi - lo);
        std::vector<uint64_t> hits;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            const Word w = word_at(idx, q, n);
            bool ok = true;
            for (const auto& c : constraints)
                if (!is_member(w, c)) {
                    ok = false;
                    break;
                }
            if (ok) hits.push_back(idx);
        }
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
    for (uint64_t idx : hits) out.push_back(word_at(idx, q, n));
    return out;
}

namespace {

// e addresses the shortened word, as stored in a witness.
Word corrupt_from_source(const Word& w, std::size_t d, std::optional<std::size_t> e) {
    std::vector<uint8_t> v(w.symbols());
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(d - 1));
    if (e) {
        if (*e < 1 || *e > v.size()) throw std::invalid_argument("substitution index out of range");
        v[*e - 1] ^= 1;
    }
    return Word(std::move(v), 2);
}

std::optional<std::size_t> to_source_position(std::optional<std::size_t> e, std::size_t d) {
    if (!e) return std::nullopt;
    return *e < d ? *e : *e + 1;
}

std::optional<std::size_t> to_shortened_position(std::optional<std::size_t> p, std::size_t d) {
    if (!p) return std::nullopt;
    return *p < d ? *p : *p - 1;
}

bool in_window(std::optional<std::size_t> p, std::size_t lo, std::size_t hi) {
    return p && *p >= lo && *p <= hi;
}

}  // namespace

bool CollisionWitness::replays() const {
    if (x.size() != y.size() || x.q() != 2 || y.q() != 2) return false;
    if (d_x < 1 || d_x > x.size() || d_y < 1 || d_y > y.size()) return false;
    if (d_x > d_y) return false;
    return corrupt_from_source(x, d_x, e_x) == z && corrupt_from_source(y, d_y, e_y) == z;
}

std::optional<std::size_t> CollisionWitness::source_sub_x() const {
    return to_source_position(e_x, d_x);
}

std::optional<std::size_t> CollisionWitness::source_sub_y() const {
    return to_source_position(e_y, d_y);
}

bool CollisionWitness::reducible() const { return e_x && e_y && *e_x == *e_y; }

std::vector<CollisionWitness> collect_collisions(const Word& x, const Word& y) {
    if (x.q() != 2 || y.q() != 2)
        throw std::invalid_argument("collision search is defined for binary words");
    if (x.size() != y.size()) throw std::invalid_argument("word lengths differ");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("collision search needs length >= 2");

    struct Pattern {
        std::size_t d;
        std::optional<std::size_t> p;  // substituted source position
        uint64_t zkey;
    };
    auto patterns_of = [n](const Word& w) {
        std::vector<Pattern> out;
        for (std::size_t d = 1; d <= n; ++d) {
            out.push_back({d, std::nullopt, index_of(corrupt_from_source(w, d, std::nullopt))});
            for (std::size_t p = 1; p <= n; ++p) {
                if (p == d) continue;
                out.push_back(
                    {d, p, index_of(corrupt_from_source(w, d, to_shortened_position(p, d)))});
            }
        }
        return out;
    };

    const auto xpats = patterns_of(x);
    const auto ypats = patterns_of(y);
    std::unordered_map<uint64_t, std::vector<std::size_t>> by_key;
    for (std::size_t i = 0; i < xpats.size(); ++i) by_key[xpats[i].zkey].push_back(i);

    std::vector<CollisionWitness> out;
    for (const auto& pb : ypats) {
        const auto it = by_key.find(pb.zkey);
        if (it == by_key.end()) continue;
        for (std::size_t i : it->second) {
            const auto& pa = xpats[i];
            const Word z = word_at(pa.zkey, 2, n - 1);
            if (pa.d <= pb.d) {
                out.push_back({x, y, pa.d, pb.d, to_shortened_position(pa.p, pa.d),
                               to_shortened_position(pb.p, pb.d), z});
            } else {
                out.push_back({y, x, pb.d, pa.d, to_shortened_position(pb.p, pb.d),
                               to_shortened_position(pa.p, pa.d), z});
            }
        }
    }
    return out;
}

CollisionCase classify_collision(const CollisionWitness& w) {
    const auto p_x = w.source_sub_x();
    const auto p_y = w.source_sub_y();
    const bool x_in = in_window(p_x, w.d_x, w.d_y);
    const bool y_in = in_window(p_y, w.d_x, w.d_y);
    if (x_in && y_in) return CollisionCase::both_inside;
    if (x_in) return CollisionCase::first_inside;
    if (y_in) return CollisionCase::mirrored;
    return CollisionCase::outside_window;
}

CollisionWitness swap_substitutions(const CollisionWitness& w) {
    const std::size_t n = w.x.size();
    const auto p_x = w.source_sub_x();
    const auto p_y = w.source_sub_y();
    const int eps_x = in_window(p_x, w.d_x, w.d_y) ? 1 : 0;
    const int eps_y = in_window(p_y, w.d_x, w.d_y) ? 1 : 0;
    std::optional<std::size_t> np_x, np_y;  // source coordinates after the swap
    if (p_y) np_x = *p_y + eps_y;
    if (p_x) np_y = *p_x - eps_x;
    if (np_x && (*np_x < 1 || *np_x > n || *np_x == w.d_x))
        throw std::invalid_argument("swapped substitution collides with the deletion in x");
    if (np_y && (*np_y < 1 || *np_y > n || *np_y == w.d_y))
        throw std::invalid_argument("swapped substitution collides with the deletion in y");
    CollisionWitness out{w.x,
                         w.y,
                         w.d_x,
                         w.d_y,
                         to_shortened_position(np_x, w.d_x),
                         to_shortened_position(np_y, w.d_y),
                         corrupt_from_source(w.x, w.d_x, to_shortened_position(np_x, w.d_x))};
    return out;
}

namespace {

struct CongruenceTerms {
    long long base;  // boundary and window contribution shared by every case
    const CollisionWitness& w;
    const CongruentConstraint& c;

    long long g(std::size_t i) const { return c.gamma[i - 1]; }
    long long xb(std::size_t i) const { return w.x[i - 1]; }
    long long yb(std::size_t i) const { return w.y[i - 1]; }
    long long delta(std::size_t i) const { return 2 * xb(i) - 1; }
};

CongruenceTerms make_terms(const CollisionWitness& w, const CongruentConstraint& c) {
    CongruenceTerms t{0, w, c};
    long long base = t.xb(w.d_x) * t.g(w.d_x) - t.yb(w.d_y) * t.g(w.d_y);
    for (std::size_t i = w.d_x + 1; i <= w.d_y; ++i)
        base += t.xb(i) * (t.g(i) - t.g(i - 1));
    t.base = base;
    return t;
}

bool vanishes(long long v, long long N) { return ((v % N) + N) % N == 0; }

std::string common_precondition_error(const CollisionWitness& w, const CongruentConstraint& c) {
    if (c.gamma.size() != w.x.size()) return "weight vector length mismatch";
    if (w.d_x > w.d_y) return "deletion indices out of order";
    if (!w.replays()) return "witness does not replay";
    if (!is_member(w.x, c)) return "first word is not a member";
    if (!is_member(w.y, c)) return "second word is not a member";
    return {};
}

}  // namespace

WindowIdentitiesCheck check_outside_window_identities(const CollisionWitness& w,
                                                      const CongruentConstraint& c) {
    WindowIdentitiesCheck out;
    out.precondition_error = common_precondition_error(w, c);
    const auto p_x = w.source_sub_x();
    const auto p_y = w.source_sub_y();
    if (out.precondition_error.empty() &&
        (in_window(p_x, w.d_x, w.d_y) || in_window(p_y, w.d_x, w.d_y)))
        out.precondition_error = "substituted position inside the deletion window";
    out.preconditions_ok = out.precondition_error.empty();
    if (!out.preconditions_ok) return out;

    const std::size_t n = w.x.size();
    const CongruenceTerms t = make_terms(w, c);

    out.shifted_window = true;
    for (std::size_t i = w.d_x + 1; i <= w.d_y; ++i)
        if (w.x[i - 1] != w.y[i - 2]) out.shifted_window = false;

    out.substituted_flipped = true;
    for (const auto& p : {p_x, p_y})
        if (p && w.x[*p - 1] != 1 - w.y[*p - 1]) out.substituted_flipped = false;

    out.untouched_equal = true;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i >= w.d_x && i <= w.d_y) continue;
        if ((p_x && i == *p_x) || (p_y && i == *p_y)) continue;
        if (w.x[i - 1] != w.y[i - 1]) out.untouched_equal = false;
    }

    long long window_diff = 0;
    for (std::size_t i = w.d_x; i <= w.d_y; ++i)
        window_diff += t.g(i) * (t.xb(i) - t.yb(i));
    out.telescoped_sum = window_diff == t.base;

    long long sub_terms = 0;
    if (p_x) sub_terms += t.delta(*p_x) * t.g(*p_x);
    if (p_y) sub_terms += t.delta(*p_y) * t.g(*p_y);
    out.congruence = vanishes(sub_terms + t.base, c.N);
    return out;
}

WindowCongruenceCheck check_inside_window_congruence(const CollisionWitness& w,
                                                     const CongruentConstraint& c, int case_id) {
    WindowCongruenceCheck out;
    if (case_id != 1 && case_id != 2) {
        out.precondition_error = "case must be 1 or 2";
        return out;
    }
    out.precondition_error = common_precondition_error(w, c);
    if (!out.precondition_error.empty()) return out;

    const auto p_x = w.source_sub_x();
    const auto p_y = w.source_sub_y();
    const bool x_in = in_window(p_x, w.d_x, w.d_y);
    const bool y_in = in_window(p_y, w.d_x, w.d_y);
    if (case_id == 1 && !(x_in && !y_in)) {
        out.precondition_error = "substitution placement does not match case 1";
        return out;
    }
    if (case_id == 2 && !(x_in && y_in)) {
        out.precondition_error = "substitution placement does not match case 2";
        return out;
    }
    out.preconditions_ok = true;

    const CongruenceTerms t = make_terms(w, c);
    long long sub_terms = t.delta(*p_x) * t.g(*p_x - 1);
    if (case_id == 1) {
        if (p_y) sub_terms += t.delta(*p_y) * t.g(*p_y);
    } else {
        sub_terms += t.delta(*p_y + 1) * t.g(*p_y);
    }
    out.congruence = vanishes(sub_terms + t.base, c.N);
    return out;
}

bool check_substitution_swap_symmetry(const Word& x, const Word& y) {
    if (x.q() != 2 || y.q() != 2)
        throw std::invalid_argument("swap symmetry is defined for binary words");
    if (x.size() != y.size()) throw std::invalid_argument("word lengths differ");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("swap symmetry needs length >= 2");

    for (const CollisionWitness& w : collect_collisions(x, y)) {
        CollisionWitness swapped{w.x, w.y, w.d_x, w.d_y, {}, {}, w.z};
        try {
            swapped = swap_substitutions(w);
        } catch (const std::invalid_argument&) {
            return false;
        }
        if (!swapped.replays()) return false;
    }
    return true;
}

}  // namespace delsub
