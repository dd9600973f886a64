#pragma once

#include "cgraph/tagged_ref.hpp"
#include "cgraph/types.hpp"

namespace cgraph {

struct ENode;

// Vertex-list node. A mark on vnxt means this vertex is logically deleted.
struct alignas(8) VNode {
  VNode(Key key, ENode* edgeHead) noexcept : k(key), ehead(edgeHead) {}

  const Key k;
  AtomicTaggedRef<VNode> vnxt;
  ENode* const ehead;

  bool isDeleted() const noexcept { return vnxt.load().mark(); }
};

// Edge-list node. A mark on enext means this edge is logically deleted.
// ptv is the destination vertex as it was when the edge was created.
struct alignas(8) ENode {
  ENode(Key dest, VNode* destination) noexcept : l(dest), ptv(destination) {}

  const Key l;
  VNode* const ptv;
  AtomicTaggedRef<ENode> enext;

  bool isDeleted() const noexcept { return enext.load().mark(); }
  // Deleted itself, or pointing at a vertex that has been deleted.
  bool isDead() const noexcept { return isDeleted() || (ptv != nullptr && ptv->isDeleted()); }
};

}  // namespace cgraph
