#include "delsub/bounds.hpp"

#include <stdexcept>

#include "delsub/error_model.hpp"
#include "delsub/parallel.hpp"

namespace delsub {

namespace {

Rat w1_of_runs(long long r, std::size_t n, unsigned q) {
    const long long qv = q;
    const long long nv = static_cast<long long>(n);
    if (r <= 3) return Rat(1, (nv - 1) * (qv - 1) + 1);
    return Rat(1, (r - 2) * ((nv - 3) * (qv - 1) + (qv - 2)) + (qv + 2));
}

Rat ws_of_runs(long long r, std::size_t n, unsigned s) {
    const Int c = binomial(n - s - 1, s);
    if (r <= 2ll * s + 1) return Rat(Int(1), c);
    return Rat(Int(1), Int(r - 2ll * s) * c);
}

}  // namespace

Rat single_sub_weight(const Word& y) {
    if (y.size() < 2) throw std::invalid_argument("transversal weight needs code length >= 3");
    return w1_of_runs(static_cast<long long>(run_count(y)), y.size() + 1, y.q());
}

Rat multi_sub_weight(const Word& y, unsigned s) {
    if (y.q() != 2) throw std::invalid_argument("multi-substitution weights are binary only");
    if (s < 1) throw std::invalid_argument("substitution count must be positive");
    const std::size_t n = y.size() + 1;
    if (n < 2 * static_cast<std::size_t>(s) + 1)
        throw std::invalid_argument("code length must be at least 2s+1");
    return ws_of_runs(static_cast<long long>(run_count(y)), n, s);
}

TransversalWeights TransversalWeights::single_sub(unsigned q, std::size_t n) {
    if (n < 3) throw std::invalid_argument("transversal weight needs code length >= 3");
    return {Kind::single_sub_qary, q, n, 1};
}

TransversalWeights TransversalWeights::multi_sub_binary(std::size_t n, unsigned s) {
    if (s < 1) throw std::invalid_argument("substitution count must be positive");
    if (n < 2 * static_cast<std::size_t>(s) + 1)
        throw std::invalid_argument("code length must be at least 2s+1");
    return {Kind::s_sub_binary, 2, n, s};
}

Rat TransversalWeights::operator()(const Word& y) const {
    if (y.size() + 1 != n) throw std::invalid_argument("output word length must be n-1");
    if (y.q() != q) throw std::invalid_argument("alphabet mismatch");
    return kind == Kind::single_sub_qary ? single_sub_weight(y) : multi_sub_weight(y, s);
}

namespace {

struct TransversalChunk {
    uint64_t count = 0;
    std::optional<uint64_t> min_idx;
    Rat min_sum;
    std::optional<uint64_t> viol_idx;
    Rat viol_sum;
};

}  // namespace

TransversalCertificate verify_transversal(std::size_t n, unsigned q, unsigned s,
                                          const WeightFn& weight, Budget* budget,
                                          unsigned threads) {
    const uint64_t total = space_size(q, n);
    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        TransversalChunk acc;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            const Word x = word_at(idx, q, n);
            Rat sum = 0;
            for (const Word& y : ball_del_sub(x, BallSpec(1, s), budget)) sum += weight(y);
            ++acc.count;
            if (!acc.min_idx || sum < acc.min_sum) {
                acc.min_idx = idx;
                acc.min_sum = sum;
            }
            if (!acc.viol_idx && sum < 1) {
                acc.viol_idx = idx;
                acc.viol_sum = sum;
            }
        }
        return acc;
    };
    auto combine = [](TransversalChunk a, TransversalChunk b) {
        a.count += b.count;
        if (b.min_idx && (!a.min_idx || b.min_sum < a.min_sum)) {
            a.min_idx = b.min_idx;
            a.min_sum = b.min_sum;
        }
        if (!a.viol_idx && b.viol_idx) {
            a.viol_idx = b.viol_idx;
            a.viol_sum = b.viol_sum;
        }
        return a;
    };
    const TransversalChunk r =
        parallel_index_reduce(0, total, TransversalChunk{}, map_chunk, combine, threads);

    TransversalCertificate cert;
    cert.pass = !r.viol_idx.has_value();
    cert.words_checked = r.count;
    cert.min_sum = r.min_sum;
    if (r.min_idx) cert.min_word = word_at(*r.min_idx, q, n);
    if (r.viol_idx) {
        cert.violating_word = word_at(*r.viol_idx, q, n);
        cert.violating_sum = r.viol_sum;
    }
    return cert;
}

TransversalCertificate verify_transversal(const TransversalWeights& w, Budget* budget,
                                          unsigned threads) {
    return verify_transversal(w.n, w.q, w.s, [&w](const Word& y) { return w(y); }, budget,
                              threads);
}

Rat single_sub_size_bound(std::size_t n, unsigned q) {
    if (n < 6) throw std::invalid_argument("bound requires n >= 6");
    if (q < 2 || static_cast<std::size_t>(q) > n)
        throw std::invalid_argument("bound requires 2 <= q <= n");
    const long long nv = static_cast<long long>(n);
    return Rat(Int(3) * int_pow(q, n - 1), Int((nv - 5) * (nv - 3) * (q - 1))) + Rat(5ll * q);
}

Rat multi_sub_size_bound(std::size_t n, unsigned s) {
    if (s < 1) throw std::invalid_argument("substitution count must be positive");
    if (n < 2 * static_cast<std::size_t>(s) + 1)
        throw std::invalid_argument("bound requires n >= 2s+1");
    Int fact = 1;
    for (unsigned i = 2; i <= s; ++i) fact *= i;
    const long long nv = static_cast<long long>(n);
    const Rat lead(fact * (2 * s + 1), int_pow(nv - 2ll * s, s) * (nv - 1));
    const Rat bracket = Rat(int_pow(2, n)) + Rat(Int(2) * int_pow(nv - 1, 2 * s + 1), 2 * s + 1);
    return lead * bracket;
}

HarmonicBoundResult check_harmonic_binomial_bound(std::size_t n, unsigned q) {
    if (q < 2 || n < 5 || static_cast<std::size_t>(q) > n)
        throw std::invalid_argument("claim domain is 2 <= q <= n, n >= 5");
    HarmonicBoundResult out;
    out.lhs = 0;
    for (std::size_t k = 1; k <= n; ++k)
        out.lhs += Rat(binomial(n, k) * int_pow(q - 1, k), k);
    out.rhs = Rat(int_pow(q, n + 1), Int(q - 1) * (static_cast<long long>(n) - 2));
    out.slack = out.rhs - out.lhs;
    out.holds = out.lhs <= out.rhs;
    return out;
}

Rat exact_weight_sum(std::size_t n, unsigned q, unsigned s) {
    if (s != 1 && q != 2)
        throw std::invalid_argument("weight sum supports s=1 for any q, or q=2 for any s");
    if (s == 1) {
        if (n < 3) throw std::invalid_argument("weight sum needs code length >= 3");
    } else if (n < 2 * static_cast<std::size_t>(s) + 1) {
        throw std::invalid_argument("code length must be at least 2s+1");
    }
    const std::size_t m = n - 1;
    Rat total = 0;
    for (std::size_t r = 1; r <= m; ++r) {
        const Int count = Int(q) * int_pow(q - 1, r - 1) * binomial(m - 1, r - 1);
        const long long rv = static_cast<long long>(r);
        const Rat w = (s == 1) ? w1_of_runs(rv, n, q) : ws_of_runs(rv, n, s);
        total += Rat(count) * w;
    }
    return total;
}

}  // namespace delsub
