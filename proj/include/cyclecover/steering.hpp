#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclecover/graph.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

/// Which free neighbour the path extends to.
enum class ExtensionRule {
  FewestFree,  // neighbour with the fewest free neighbours of its own
  MostFree,    // neighbour with the most free neighbours
};

struct RotationOptions {
  /// Rotations allowed while stuck; non-positive selects 20 |allowed| + 1000.
  long long rotation_budget = 0;
  ExtensionRule rule = ExtensionRule::FewestFree;
};

/// Longest cycle found by rotation-extension inside G[allowed], grown from `start`.
/// When the path closes, the cycle is reopened next to a free neighbour and extended.
std::optional<Cycle> grow_cycle(const Graph& g, const std::vector<std::uint8_t>& allowed, Vertex start, Rng& rng,
                                const RotationOptions& opt = {});

/// Rotates the tail of `p` (head fixed) until the tail lies in `tail_target`.
/// Rotations only reorder vertices of p. Returns nullopt after `budget` rotations.
std::optional<Path> steer_tail(const Graph& g, Path p, const std::vector<std::uint8_t>& tail_target, long long budget, Rng& rng);

/// Opens cycle `c` into a path whose head lies in `head_target` and whose tail lies
/// in `tail_target`, first trying every cycle edge and then tail rotations.
std::optional<Path> open_cycle_steered(const Graph& g, const Cycle& c, const std::vector<std::uint8_t>& head_target,
                                       const std::vector<std::uint8_t>& tail_target, long long budget, Rng& rng);

}  // namespace cyclecover
