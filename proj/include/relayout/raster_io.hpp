#pragma once

#include <string>

#include "relayout/saliency.hpp"

namespace relayout {

/// Loads an 8-bit grayscale raster (PGM natively; PNG and other formats via
/// OpenCV when built with it), mapping values linearly to [0,1].
SaliencyMap load_gray_image(const std::string& path);

/// Writes a binary PGM (P5), quantizing values to 8 bits.
void save_pgm(const SaliencyMap& map, const std::string& path);

}  // namespace relayout
