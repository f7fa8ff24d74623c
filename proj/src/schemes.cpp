#include "noma_mec/schemes.hpp"

namespace noma_mec {

std::string scheme_name(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::Proposed: return "proposed";
        case SchemeId::FullOffloading: return "full_offloading";
        case SchemeId::EveFullyDecode: return "eve_fully_decode";
    }
    return "unknown";
}

std::optional<SchemeId> parse_scheme(const std::string& name) {
    for (SchemeId s : kAllSchemes) {
        if (scheme_name(s) == name) return s;
    }
    return std::nullopt;
}

EveSinrModel scheme_eve_model(SchemeId scheme) {
    return scheme == SchemeId::EveFullyDecode ? EveSinrModel::FullDecode
                                              : EveSinrModel::SicInterference;
}

SolveResult decide(SchemeId scheme, const SlotState& state,
                   std::span<const double> warm_power_w) {
    SolveOptions options;
    options.force_zero_freq = scheme == SchemeId::FullOffloading;
    const EveSinrModel model = scheme_eve_model(scheme);
    if (state.eve_model != model) {
        SlotState adjusted = state;
        adjusted.eve_model = model;
        return solve_slot(adjusted, warm_power_w, options);
    }
    return solve_slot(state, warm_power_w, options);
}

}  // namespace noma_mec
