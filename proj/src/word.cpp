#include "delsub/word.hpp"

#include <sstream>

namespace delsub {

Word::Word(std::vector<uint8_t> symbols, unsigned q) : symbols_(std::move(symbols)), q_(q) {
    if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
    for (uint8_t s : symbols_)
        if (s >= q) throw std::invalid_argument("symbol out of range for alphabet");
}

Word Word::parse(const std::string& text, unsigned q) {
    std::vector<uint8_t> syms;
    if (q <= 10) {
        syms.reserve(text.size());
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("bad symbol character: " + std::string(1, ch));
            syms.push_back(static_cast<uint8_t>(ch - '0'));
        }
    } else {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw std::invalid_argument("empty symbol in word text");
            int v = std::stoi(tok);
            if (v < 0 || v > 255) throw std::invalid_argument("symbol out of byte range");
            syms.push_back(static_cast<uint8_t>(v));
        }
    }
    return Word(std::move(syms), q);
}

std::string Word::str() const {
    std::string out;
    if (q_ <= 10) {
        out.reserve(symbols_.size());
        for (uint8_t s : symbols_) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(static_cast<int>(symbols_[i]));
        }
    }
    return out;
}

RunProfile run_profile(const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty word has no run count");
    RunProfile p;
    p.run_boundaries.push_back(0);
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] != w[i - 1]) p.run_boundaries.push_back(i);
    p.run_count = static_cast<unsigned>(p.run_boundaries.size());
    return p;
}

unsigned run_count(const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty word has no run count");
    unsigned r = 1;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] != w[i - 1]) ++r;
    return r;
}

Word complement(const Word& w) {
    if (w.q() != 2) throw std::invalid_argument("complement defined for binary only");
    std::vector<uint8_t> syms(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) syms[i] = static_cast<uint8_t>(1 - w[i]);
    return Word(std::move(syms), 2);
}

Word binary_signature(const Word& z) {
    if (z.empty()) throw std::invalid_argument("empty word has no signature");
    std::vector<uint8_t> syms(z.size());
    syms[0] = 1;
    for (std::size_t i = 1; i < z.size(); ++i) syms[i] = z[i] > z[i - 1] ? 1 : 0;
    return Word(std::move(syms), 2);
}

uint64_t space_size(unsigned q, std::size_t n) {
    uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > UINT64_MAX / q) throw std::overflow_error("q^n exceeds 64-bit range");
        total *= q;
    }
    return total;
}

Word word_at(uint64_t index, unsigned q, std::size_t n) {
    std::vector<uint8_t> syms(n);
    for (std::size_t i = n; i-- > 0;) {
        syms[i] = static_cast<uint8_t>(index % q);
        index /= q;
    }
    if (index != 0) throw std::out_of_range("word index beyond q^n");
    return Word(std::move(syms), q);
}

uint64_t index_of(const Word& w) {
    uint64_t idx = 0;
    for (std::size_t i = 0; i < w.size(); ++i) idx = idx * w.q() + w[i];
    return idx;
}

}  // namespace delsub
