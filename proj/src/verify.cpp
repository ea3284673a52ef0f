#include "delsub/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "delsub/binary_code.hpp"
#include "delsub/parallel.hpp"

namespace delsub {

namespace {

struct OwnerChunk {
    std::map<Word, uint64_t> owner;  // ball element -> first generating word
    std::vector<std::tuple<Word, uint64_t, uint64_t>> collisions;
};

void note_collision(OwnerChunk& acc, const Word& z, uint64_t i, uint64_t j) {
    if (i > j) std::swap(i, j);
    acc.collisions.emplace_back(z, i, j);
}

}  // namespace

Certificate verify_code(const std::vector<Word>& words, const BallSpec& spec, Budget* budget,
                        unsigned threads) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Word> sorted(words);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end(),
                             [](const Word& a, const Word& b) { return a == b; }),
                 sorted.end());
    for (const Word& w : sorted)
        if (w.size() != sorted.front().size() || w.q() != sorted.front().q())
            throw std::invalid_argument("all words must share one length and alphabet");

    const uint64_t count = sorted.size();
    auto map_chunk = [&](uint64_t lo, uint64_t hi) {
        OwnerChunk acc;
        for (uint64_t i = lo; i < hi; ++i)
            for (const Word& z : ball_del_sub(sorted[i], spec, budget)) {
                const auto [it, fresh] = acc.owner.emplace(z, i);
                if (!fresh && it->second != i) note_collision(acc, z, it->second, i);
            }
        return acc;
    };
    auto combine = [](OwnerChunk acc, OwnerChunk part) {
        for (auto& [z, i] : part.owner) {
            const auto [it, fresh] = acc.owner.emplace(z, i);
            if (!fresh && it->second != i) {
                note_collision(acc, z, it->second, i);
                it->second = std::min(it->second, i);
            }
        }
        acc.collisions.insert(acc.collisions.end(), part.collisions.begin(),
                              part.collisions.end());
        return acc;
    };
    OwnerChunk merged =
        parallel_index_reduce(0, count, OwnerChunk{}, map_chunk, combine, threads, 64);

    Certificate cert;
    cert.stats.pairs_checked = count < 2 ? 0 : count * (count - 1) / 2;
    cert.stats.balls_computed = count;
    cert.pass = merged.collisions.empty();
    if (!cert.pass) {
        const auto best = std::min_element(merged.collisions.begin(), merged.collisions.end());
        const auto& [z, i, j] = *best;
        const Word& x = sorted[static_cast<std::size_t>(i)];
        const Word& y = sorted[static_cast<std::size_t>(j)];
        const auto px = find_del_sub_pattern(x, z, spec.max_substitutions);
        const auto py = find_del_sub_pattern(y, z, spec.max_substitutions);
        if (!px || !py) throw std::logic_error("collision witness fails to replay");
        cert.witness = CertificateWitness{x, y, z, *px, *py};
    }
    cert.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

std::vector<Word> greedy_max_code(std::size_t n, unsigned q, const BallSpec& spec,
                                  Budget* budget) {
    const uint64_t total = space_size(q, n);
    std::vector<Word> taken;
    std::set<Word> occupied;
    for (uint64_t idx = 0; idx < total; ++idx) {
        const Word x = word_at(idx, q, n);
        const std::vector<Word> ball = ball_del_sub(x, spec, budget);
        bool clashes = false;
        for (const Word& z : ball)
            if (occupied.count(z)) {
                clashes = true;
                break;
            }
        if (clashes) continue;
        occupied.insert(ball.begin(), ball.end());
        taken.push_back(x);
    }
    if (!verify_code(taken, spec, budget, 1).pass)
        throw std::logic_error("greedy code failed its own verification");
    return taken;
}

std::vector<BoundReport> ds_table(std::size_t n_lo, std::size_t n_hi, unsigned q, unsigned s,
                                  Budget* budget, unsigned threads) {
    std::vector<BoundReport> rows;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        BoundReport row;
        row.n = n;
        row.q = q;
        row.s = s;
        row.weight_sum = exact_weight_sum(n, q, s);
        if (s == 1 && n >= 6 && static_cast<std::size_t>(q) <= n)
            row.closed_form_bound = single_sub_size_bound(n, q);
        else if (s >= 2 && q == 2 && n >= 2 * static_cast<std::size_t>(s) + 1)
            row.closed_form_bound = multi_sub_size_bound(n, s);
        row.greedy_code_size = greedy_max_code(n, q, BallSpec(1, s), budget).size();
        if (q == 2 && s == 1)
            row.constructed_code_size = best_binary_params(n, budget, threads).second;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace delsub
