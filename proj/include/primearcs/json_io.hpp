#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "primearcs/arc.hpp"
#include "primearcs/hits.hpp"
#include "primearcs/sequences.hpp"
#include "primearcs/sieve_lab.hpp"

namespace primearcs {

using json = nlohmann::ordered_json;

/// Rationals cross every file boundary as "num/den" strings.
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

/// [[left, length], ...]
json to_json(const ArcUnion& u);
ArcUnion arc_union_from_json(const json& j);

/// {"c":"1/2","method":"greedy","seed":null,"entries":[[2,0],[3,1],...]}
json to_json(const NumeratorSequence& seq);
NumeratorSequence sequence_from_json(const json& j);

json to_json(const BlockSchedule& schedule);

json to_json(const LevelSetProfile& profile);
json to_json(const SieveReport& report);
json to_json(const MonteCarloEstimate& mc);
json to_json(const HitReport& report, bool with_rows = false);

/// Throws std::runtime_error("sequence file not found") when absent.
NumeratorSequence load_sequence(const std::filesystem::path& path);
void save_sequence(const std::filesystem::path& path, const NumeratorSequence& seq,
                   const BlockSchedule* schedule = nullptr);

}  // namespace primearcs
