#pragma once

#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "cfft/planner.hpp"

namespace cfft {

inline constexpr const char* kPlanFormat = "cfft-plan";
inline constexpr int kPlanVersion = 1;

/// Plan document:
/// {
///   "format": "cfft-plan", "version": 1,
///   "field": {"m": 4, "poly": "13"},
///   "n": 15,
///   "cosets": [[0], [1,2,4,8], ...],
///   "gamma": {"1": "1", "2": "6", "4": "..."},
///   "orientation": "output_reversed",
///   "A": ["<hex row 0>", ...],
///   "block_form": {"present": true, "k": 5, "m": 4, "c": [["<hex>", ...], ...]}
/// }
/// All masks are lowercase hexadecimal without prefix.
nlohmann::json plan_to_json(const CfftPlan& plan, const BlockCyclicForm* form = nullptr);

/// Rebuilds a plan from its document. The A rows from the document are kept
/// as-is (not recomputed), so a document can be verified independently.
/// Throws std::invalid_argument on malformed or inconsistent documents.
CfftPlan plan_from_json(const nlohmann::json& doc);

void save_plan(const std::filesystem::path& path, const CfftPlan& plan,
               const BlockCyclicForm* form = nullptr);
CfftPlan load_plan(const std::filesystem::path& path);

std::string to_hex(std::uint64_t v);
std::uint64_t from_hex(const std::string& s);

}  // namespace cfft
