#pragma once

namespace cyclecover {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// results; the serial path exists for testing and benchmarking.
enum class Exec { Serial, Parallel };

}  // namespace cyclecover
