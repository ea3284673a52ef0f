#ifndef DELSUB_JSON_OUT_HPP
#define DELSUB_JSON_OUT_HPP

#include <string>

#include "json.hpp"

#include "delsub/channel.hpp"
#include "delsub/decode.hpp"
#include "delsub/rational.hpp"
#include "delsub/verify.hpp"

namespace delsub {

// Key order is insertion order, which keeps every emission byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "delsub/1";

// Exact values render as strings like "901/195"; float mode renders doubles.
Json json_number(const Rat& v, bool float_mode);

Json json_error_pattern(const ErrorPattern& p);
Json json_decode_outcome(const DecodeOutcome& outcome);

// Wall time is emitted only on request so repeated runs stay byte-identical.
Json json_certificate(const Certificate& cert, bool with_timing);

Json json_trial_failure(const TrialFailure& f);

}  // namespace delsub

#endif
