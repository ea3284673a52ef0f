#ifndef DELSUB_CONGRUENT_HPP
#define DELSUB_CONGRUENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delsub/budget.hpp"
#include "delsub/word.hpp"

namespace delsub {

// All words whose gamma-weighted symbol sum is congruent to a modulo N.
struct CongruentConstraint {
    std::vector<long long> gamma;
    long long a;
    long long N;

    CongruentConstraint(std::vector<long long> gamma_, long long a_, long long N_);

    // Text form "gamma=<csv>;a=<int>;N=<int>".
    static CongruentConstraint parse(const std::string& text);
    std::string str() const;
};

long long weighted_residue(const Word& x, const std::vector<long long>& gamma, long long N);
bool is_member(const Word& x, const CongruentConstraint& c);

// Words of length n over q symbols satisfying every constraint, in
// lexicographic order.
std::vector<Word> enumerate_congruent(const std::vector<CongruentConstraint>& constraints,
                                      unsigned q, std::size_t n, Budget* budget = nullptr,
                                      unsigned threads = 1);

// A corrupted word reachable from two sources by one deletion plus at most one
// substitution each. Substitution indices address the shortened word, matching
// apply_del_sub; the roles are ordered so that d_x <= d_y.
struct CollisionWitness {
    Word x, y;
    std::size_t d_x, d_y;
    std::optional<std::size_t> e_x, e_y;
    Word z;

    bool replays() const;

    // Substituted position within the unshortened source word, if any.
    std::optional<std::size_t> source_sub_x() const;
    std::optional<std::size_t> source_sub_y() const;

    // True when both sides substitute the very same position of z. Such a
    // collision also exists with the substitutions stripped from both sides,
    // and several of the checked identities genuinely fail on it.
    bool reducible() const;
};

std::vector<CollisionWitness> collect_collisions(const Word& x, const Word& y);

enum class CollisionCase {
    outside_window,  // neither substituted source position lies in [d_x, d_y]
    first_inside,    // x's substitution inside, y's outside
    both_inside,
    mirrored,  // y's substitution inside, x's outside; swap first, then check
};

CollisionCase classify_collision(const CollisionWitness& w);

// Reattributes the substitutions between the two sides (x takes y's position
// and vice versa, each shifted across the deletion window when it lies inside)
// and rebuilds z. The result replays whenever the input does.
CollisionWitness swap_substitutions(const CollisionWitness& w);

// Identities tying two colliding members of a congruent code together when
// both substitutions fall outside the deletion window.
struct WindowIdentitiesCheck {
    bool preconditions_ok = false;
    std::string precondition_error;

    bool shifted_window = false;      // x_i = y_{i-1} across [d_x+1, d_y]
    bool substituted_flipped = false; // x_i = 1 - y_i at each substituted position
    bool untouched_equal = false;     // x_i = y_i everywhere else
    bool telescoped_sum = false;      // window sum collapses to boundary terms
    bool congruence = false;          // weighted difference vanishes mod N

    bool all_hold() const {
        return preconditions_ok && shifted_window && substituted_flipped && untouched_equal &&
               telescoped_sum && congruence;
    }
};

WindowIdentitiesCheck check_outside_window_identities(const CollisionWitness& w,
                                                      const CongruentConstraint& c);

struct WindowCongruenceCheck {
    bool preconditions_ok = false;
    std::string precondition_error;
    bool congruence = false;
};

// case_id 1: x's substituted source position inside [d_x, d_y], y's outside.
// case_id 2: both inside. The weight applied to an inside position shifts
// down by one index.
WindowCongruenceCheck check_inside_window_congruence(const CollisionWitness& w,
                                                     const CongruentConstraint& c, int case_id);

// For every pair of corruption patterns that make x and y collide, swapping
// the substitution attributions must make them collide again.
bool check_substitution_swap_symmetry(const Word& x, const Word& y);

}  // namespace delsub

#endif
