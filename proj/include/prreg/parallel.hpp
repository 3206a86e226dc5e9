#pragma once

namespace prreg {

// Serial is the reference implementation; Parallel must produce bit-identical
// results (independent work items written to pre-sized slots, reduced in a
// fixed order afterwards).
enum class ExecMode { Serial, Parallel };

// Effective number of OpenMP threads (1 without OpenMP support).
int max_threads();

}  // namespace prreg
