#pragma once

#include <string>

#include <json.hpp>

#include "efv/formula_ff.hpp"

namespace efv {

inline constexpr const char* kArtifactVersion = "1.0.0";

nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace efv
