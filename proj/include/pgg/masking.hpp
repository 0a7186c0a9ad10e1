#pragma once

#include <string>
#include <vector>

namespace pgg {

/// The display names (and their common aliases) scrubbed by default before
/// reasoning text reaches the judge.
const std::vector<std::string>& default_mask_names();

/// Blinds reasoning text for sentiment scoring: every listed name (longest
/// first, case-insensitive) becomes "the other player", standalone "AI" /
/// "model" / "models" tokens are removed, runs of spaces collapse.
/// Idempotent: masking a masked text changes nothing.
std::string mask_reasoning(const std::string& text, const std::vector<std::string>& display_names);

}  // namespace pgg
