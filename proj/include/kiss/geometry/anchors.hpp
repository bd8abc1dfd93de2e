#pragma once

namespace kiss {

// Endpoint ids used in singularity descriptors so that evaluators receive
// exact offsets z - e near branch points and hard edges.
enum Anchor : int {
  kAnchorMinusOne = 0,
  kAnchorPlusOne = 1,
  kAnchorZStar = 2,     // z_*
  kAnchorZStarBar = 3,  // -conj(z_*)
};

}  // namespace kiss
