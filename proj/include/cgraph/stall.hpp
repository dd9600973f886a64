#pragma once

#include <cstdint>
#include <string_view>

#include "cgraph/thread_registry.hpp"
#include "cgraph/types.hpp"

namespace cgraph {

// Instrumented points inside takeSnapshot where a test may park a thread.
enum class StallSite : std::uint8_t {
  AfterAcquire,          // collector acquired, nothing done yet
  AfterCollectVnodes,    // vertex chain complete and closed
  IteratorClaim,         // won iterEdgeStatus IDLE -> ACTIVE on a vertex
  BeforeReconstruction,  // reports blocked, reconstruction not started
  ReconstructionClaim,   // won edgeStatus IDLE -> ACTIVE on a vertex
};

inline constexpr StallSite kAllStallSites[] = {
    StallSite::AfterAcquire, StallSite::AfterCollectVnodes, StallSite::IteratorClaim,
    StallSite::BeforeReconstruction, StallSite::ReconstructionClaim};

std::string_view toString(StallSite site) noexcept;

class SnapshotHooks {
 public:
  virtual ~SnapshotHooks() = default;
  // `key` is the vertex key for the claim sites, kNegInfKey otherwise.
  virtual void reached(StallSite site, Tid tid, Key key) = 0;
};

#ifndef CGRAPH_STALL_HOOKS
#define CGRAPH_STALL_HOOKS 1
#endif

inline void stallPoint(SnapshotHooks* hooks, StallSite site, Tid tid, Key key = kNegInfKey) {
#if CGRAPH_STALL_HOOKS
  if (hooks != nullptr) hooks->reached(site, tid, key);
#else
  (void)hooks, (void)site, (void)tid, (void)key;
#endif
}

}  // namespace cgraph
