#include "delsub/json_out.hpp"

namespace delsub {

const char* decode_status_name(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::decoded:
      return "decoded";
    case DecodeStatus::not_a_codeword_channel_output:
      return "not_a_codeword_channel_output";
    case DecodeStatus::ambiguous:
      return "ambiguous";
  }
  return "unknown";
}

Json json_number(const Rat& v, bool float_mode) {
  if (float_mode) return v.convert_to<double>();
  return rat_str(v);
}

Json json_error_pattern(const ErrorPattern& p) {
  Json out;
  out["deleted_positions"] = p.deleted_positions;
  Json subs = Json::array();
  for (const auto& [pos, sym] : p.substituted_positions) {
    subs.push_back(Json{{"position", pos}, {"symbol", sym}});
  }
  out["substitutions"] = subs;
  if (p.transposed_position) {
    out["transposed_position"] = *p.transposed_position;
    out["transpose_order"] = p.transpose_order == TransposeOrder::before_deletion
                                 ? "before_deletion"
                                 : "after_deletion";
  }
  return out;
}

Json json_decode_outcome(const DecodeOutcome& outcome) {
  Json out;
  out["status"] = decode_status_name(outcome.status);
  out["codeword"] = outcome.codeword ? Json(outcome.codeword->str()) : Json(nullptr);
  out["inferred_errors"] =
      outcome.inferred_errors ? json_error_pattern(*outcome.inferred_errors) : Json(nullptr);
  if (outcome.status == DecodeStatus::ambiguous) {
    Json cands = Json::array();
    for (const auto& w : outcome.candidates) cands.push_back(w.str());
    out["candidates"] = cands;
  }
  return out;
}

Json json_certificate(const Certificate& cert, bool with_timing) {
  Json out;
  out["verdict"] = cert.pass ? "pass" : "fail";
  if (cert.witness) {
    Json w;
    w["x"] = cert.witness->x.str();
    w["y"] = cert.witness->y.str();
    w["z"] = cert.witness->z.str();
    w["pattern_x"] = json_error_pattern(cert.witness->pattern_x);
    w["pattern_y"] = json_error_pattern(cert.witness->pattern_y);
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  Json stats;
  stats["pairs_checked"] = cert.stats.pairs_checked;
  stats["balls_computed"] = cert.stats.balls_computed;
  if (with_timing) stats["wall_seconds"] = cert.stats.wall_seconds;
  out["stats"] = stats;
  return out;
}

Json json_trial_failure(const TrialFailure& f) {
  Json out;
  out["trial"] = f.trial;
  out["codeword"] = f.codeword.str();
  out["received"] = f.received.str();
  out["detail"] = f.detail;
  return out;
}

}  // namespace delsub
