// Grayscale rendering of 19x19 data vectors as binary PGM.
#pragma once

#include "advlin/types.hpp"

#include <string>

namespace advlin {

// Maps each component onto [0, 1] via 0.5 (tanh(2x/3) + 1), scales to
// [0, 255] with round-half-up, and writes a binary "P5" PGM, 19 wide by
// 19 tall, row major. The vector must have exactly 361 entries.
void render_image(const Eigen::Ref<const Vector>& x, const std::string& path);

}  // namespace advlin
