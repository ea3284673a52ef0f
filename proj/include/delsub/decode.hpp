#ifndef DELSUB_DECODE_HPP
#define DELSUB_DECODE_HPP

#include <optional>
#include <vector>

#include "delsub/error_model.hpp"
#include "delsub/word.hpp"

namespace delsub {

enum class DecodeStatus { decoded, not_a_codeword_channel_output, ambiguous };

struct DecodeOutcome {
    DecodeStatus status;
    std::optional<Word> codeword;
    std::optional<ErrorPattern> inferred_errors;
    // Filled only in the ambiguous case, which would disprove the
    // construction; kept so the conflict can be reported, never swallowed.
    std::vector<Word> candidates;
};

const char* decode_status_name(DecodeStatus s);

}  // namespace delsub

#endif
