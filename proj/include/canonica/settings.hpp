#pragma once

#include <atomic>

namespace canonica {

/// Re-check the Buchberger criterion and generator membership on every
/// Gröbner basis computed through the ideal layer.
inline std::atomic<bool> g_verify_gb{false};

/// When set, every newly built free resolution map is checked for d^2 = 0 and
/// for entries in the graded maximal ideal; the counters record the outcome.
inline std::atomic<bool> g_audit_resolutions{false};
inline std::atomic<long> g_resolution_maps_audited{0};
inline std::atomic<long> g_resolution_audit_failures{0};

}  // namespace canonica
