#pragma once

namespace srg {

// Classical: every drawn edge is accepted, components may become complex.
// Simple: tree-unicycle edges accepted with probability p, unicycle-unicycle
// and intra-unicycle edges rejected, so components stay trees or unicycles.
enum class Model { Classical, Simple };

enum class Sampler { Naive, EventDriven };

}  // namespace srg
