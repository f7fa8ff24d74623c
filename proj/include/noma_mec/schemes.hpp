#pragma once

#include <optional>
#include <string>

#include "noma_mec/slot_optimizer.hpp"

namespace noma_mec {

/// Decision policies compared in the experiments: the drift-plus-penalty
/// optimizer, a benchmark that forbids local computing, and a benchmark that
/// assumes the eavesdropper decodes without multi-user interference.
enum class SchemeId { Proposed, FullOffloading, EveFullyDecode };

inline constexpr SchemeId kAllSchemes[] = {SchemeId::Proposed, SchemeId::FullOffloading,
                                           SchemeId::EveFullyDecode};

std::string scheme_name(SchemeId scheme);
std::optional<SchemeId> parse_scheme(const std::string& name);

// The eavesdropper model a scheme assumes, applied both inside the per-slot
// optimization and in the realized-rate accounting.
EveSinrModel scheme_eve_model(SchemeId scheme);

// Dispatches one slot decision. `state.eve_model` is overridden to the
// scheme's model; FullOffloading pins every CPU frequency to zero and only
// allocates transmit power.
SolveResult decide(SchemeId scheme, const SlotState& state,
                   std::span<const double> warm_power_w = {});

}  // namespace noma_mec
