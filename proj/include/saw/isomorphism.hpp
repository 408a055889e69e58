#pragma once

#include <map>
#include <optional>

#include "saw/graph.hpp"

namespace saw {

// Rooted isomorphism of the radius-r balls around ra in a and rb in b,
// respecting edge multiplicities (loops included). Returns the vertex map on
// success.
std::optional<std::map<VertexKey, VertexKey>> ball_isomorphism(const GraphHandle& a, const VertexKey& ra,
                                                               const GraphHandle& b, const VertexKey& rb,
                                                               int radius);

bool balls_isomorphic(const GraphHandle& a, const VertexKey& ra, const GraphHandle& b, const VertexKey& rb,
                      int radius);

}  // namespace saw
