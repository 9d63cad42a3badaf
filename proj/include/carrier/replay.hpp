#pragma once

// Stand-alone checker for serialized decomposition certificates. It reads the
// raw JSON and recomputes every identity with exact arithmetic; it does not
// use the inductive-system or engine code.

#include <json.hpp>

#include <string>

namespace carrier {

struct ReplayResult {
  bool ok = true;
  std::size_t identities_checked = 0;
  /// Description of the first identity that failed.
  std::string failure;
};

ReplayResult replay_certificate(const nlohmann::json& certificate);

}  // namespace carrier
