#pragma once

#include <nlohmann/json.hpp>

#include "cfft/addnet.hpp"

namespace cfft {

inline constexpr const char* kNetlistFormat = "cfft-netlist";
inline constexpr int kNetlistVersion = 1;

/// Network document for an AdditionNetwork.
///
/// Every signal is a node {"id", "op", "in"} with a globally unique id;
/// op is "input" (carries "index" into v), "zero" (padding), "wire" (one
/// input, no cost) or "xor" (fan-in of two or more, |in| - 1 additions).
/// Stages, in order: pad_reorder, pre_addition, mvp, post_addition, extract.
/// The mvp stage holds one module per product: either {"elided": true} or
/// k, s, the column groups with their selection tables as hex masks, the
/// stage-1 table nodes, the stage-3 row nodes and the module's output ids
/// (null for rows that are identically zero). extract lists, for each F_j,
/// the id of the node that carries it.
nlohmann::json export_netlist(const AdditionNetwork& net);

/// Additions per stage recomputed from the document's xor nodes.
AddnetCounts netlist_counts(const nlohmann::json& doc);

/// True if any zero-padding node feeds, directly or transitively, a node
/// listed in the extract stage.
bool padding_reaches_outputs(const nlohmann::json& doc);

}  // namespace cfft
