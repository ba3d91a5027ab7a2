#pragma once

#include "dh/lfun.hpp"
#include "dh/scenarios.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace dh {

inline constexpr const char* kInstanceFormat = "dh-instance";
inline constexpr int kInstanceVersion = 1;

/// Pairing together with the record it was built from.
struct PairingRecord {
    PolePairing pairing;
    std::vector<PairingBlock> blocks; ///< empty for table pairings
};

/// Parsed instance file. Every record is optional apart from the ring.
struct InstanceFile {
    RingSpec spec;
    int level = 0;
    std::optional<FiniteModule> module;
    std::optional<PairingRecord> pairing;
    std::optional<LfunInstance> lfun;
    std::optional<ElementaryShape> shape;
    std::optional<ScenarioInput> scenario;
};

/// Strict parse: unknown keys, wrong types and out-of-range coefficients raise
/// ValidationError with the JSON path of the offending field.
InstanceFile parse_instance(const nlohmann::json& doc);
/// Reads and parses a file; unreadable files and JSON syntax errors are ValidationErrors.
InstanceFile load_instance(const std::string& path);

/// Complete instance document holding one lfun record.
nlohmann::ordered_json lfun_instance_json(const LfunInstance& inst);

} // namespace dh
