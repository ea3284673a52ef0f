#ifndef DELSUB_WORD_HPP
#define DELSUB_WORD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace delsub {

// Immutable q-ary sequence. Internal indexing is 0-based; anything user-facing
// (error positions in reports, the (d,e) operator) is 1-based.
class Word {
public:
    Word() = default;
    Word(std::vector<uint8_t> symbols, unsigned q);

    // Text form: digit string for q <= 10 ("01021"), comma-separated otherwise.
    static Word parse(const std::string& text, unsigned q);

    unsigned q() const { return q_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    uint8_t operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<uint8_t>& symbols() const { return symbols_; }

    std::string str() const;

    bool operator==(const Word& o) const { return q_ == o.q_ && symbols_ == o.symbols_; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    // lexicographic on symbols; shorter words compare like their prefix
    bool operator<(const Word& o) const { return symbols_ < o.symbols_; }

private:
    std::vector<uint8_t> symbols_;
    unsigned q_ = 2;
};

struct RunProfile {
    unsigned run_count = 0;
    std::vector<std::size_t> run_boundaries;  // start index of each run, 0-based
};

RunProfile run_profile(const Word& w);
unsigned run_count(const Word& w);

Word complement(const Word& w);         // binary only
Word binary_signature(const Word& z);   // first symbol 1, then ascent indicators

// Index <-> word over the lexicographically ordered space Sigma_q^n.
// Only valid while q^n fits in 64 bits; space_size throws otherwise.
uint64_t space_size(unsigned q, std::size_t n);
Word word_at(uint64_t index, unsigned q, std::size_t n);
uint64_t index_of(const Word& w);

}  // namespace delsub

#endif
