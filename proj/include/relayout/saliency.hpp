#pragma once

#include <vector>

#include "relayout/geometry.hpp"

namespace relayout {

/// Grayscale raster with row-major values in [0,1].
struct SaliencyMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
    bool valid() const {
        return width > 0 && height > 0 &&
               values.size() == static_cast<size_t>(width) * height;
    }
};

/// Summed-area table of size (width+1) x (height+1); entry (i,j) holds the
/// sum of all pixels strictly above and left.
struct IntegralImage {
    int width = 0;
    int height = 0;
    std::vector<double> sums;

    double table(int i, int j) const { return sums[static_cast<size_t>(j) * (width + 1) + i]; }

    /// Sum over the half-open pixel rect [x0,x1) x [y0,y1).
    double rect_sum(int x0, int y0, int x1, int y1) const {
        return table(x1, y1) - table(x0, y1) - table(x1, y0) + table(x0, y0);
    }
};

/// Half-open pixel rectangle [x0,x1) x [y0,y1).
struct RectPx {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    long long area() const { return static_cast<long long>(width()) * height(); }
};

struct SalientBlock {
    BBox bbox;           // normalized to the raster extent
    double score = 0.0;  // in [-1, 1]
};

struct SaliencyParams {
    double tau_bin = 0.5;  // binarization threshold
    double s_min = 0.3;    // minimum score for an emitted block
    int max_blocks = 4;
};

IntegralImage integral_image(const SaliencyMap& map);

SaliencyMap binarize(const SaliencyMap& map, double tau);

/// White-minus-black pixel density over the rect, using the integral image
/// of a binarized map: (W - B) / area = 2 * white_density - 1. Throws on a
/// zero-area rect.
double block_score(const IntegralImage& binarized, const RectPx& rect);

/// Greedy extraction of up to max_blocks non-overlapping salient rectangles:
/// connected white components are candidates, each shrunk while the score
/// improves; the best candidate above s_min is emitted and zeroed out.
/// The returned list is ordered by non-increasing score.
std::vector<SalientBlock> extract_blocks(const SaliencyMap& map,
                                         const SaliencyParams& params = {});

}  // namespace relayout
