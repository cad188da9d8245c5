#include "relayout/saliency.hpp"

#include <algorithm>
#include <stdexcept>

namespace relayout {

IntegralImage integral_image(const SaliencyMap& map) {
    if (!map.valid()) throw std::invalid_argument("integral_image: invalid map");
    IntegralImage ii;
    ii.width = map.width;
    ii.height = map.height;
    ii.sums.assign(static_cast<size_t>(map.width + 1) * (map.height + 1), 0.0);
    const int stride = map.width + 1;
    for (int y = 0; y < map.height; ++y) {
        double row = 0.0;
        for (int x = 0; x < map.width; ++x) {
            row += map.at(x, y);
            ii.sums[static_cast<size_t>(y + 1) * stride + (x + 1)] =
                ii.sums[static_cast<size_t>(y) * stride + (x + 1)] + row;
        }
    }
    return ii;
}

SaliencyMap binarize(const SaliencyMap& map, double tau) {
    SaliencyMap out;
    out.width = map.width;
    out.height = map.height;
    out.values.resize(map.values.size());
    for (size_t i = 0; i < map.values.size(); ++i)
        out.values[i] = map.values[i] >= tau ? 1.0 : 0.0;
    return out;
}

double block_score(const IntegralImage& binarized, const RectPx& rect) {
    if (rect.area() <= 0) throw std::invalid_argument("block_score: zero-area rect");
    if (rect.x0 < 0 || rect.y0 < 0 || rect.x1 > binarized.width || rect.y1 > binarized.height)
        throw std::out_of_range("block_score: rect out of bounds");
    const double white = binarized.rect_sum(rect.x0, rect.y0, rect.x1, rect.y1);
    const double area = static_cast<double>(rect.area());
    const double black = area - white;
    return (white - black) / area;
}

namespace {

// Bounding rects of 8-connected white components, via iterative flood fill.
std::vector<RectPx> component_rects(const SaliencyMap& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<uint8_t> seen(static_cast<size_t>(w) * h, 0);
    std::vector<RectPx> rects;
    std::vector<int> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t id = static_cast<size_t>(y) * w + x;
            if (seen[id] || mask.values[id] <= 0.0) continue;
            RectPx rect{x, y, x + 1, y + 1};
            stack.push_back(static_cast<int>(id));
            seen[id] = 1;
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                const int cx = cur % w, cy = cur / w;
                rect.x0 = std::min(rect.x0, cx);
                rect.y0 = std::min(rect.y0, cy);
                rect.x1 = std::max(rect.x1, cx + 1);
                rect.y1 = std::max(rect.y1, cy + 1);
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        const size_t nid = static_cast<size_t>(ny) * w + nx;
                        if (!seen[nid] && mask.values[nid] > 0.0) {
                            seen[nid] = 1;
                            stack.push_back(static_cast<int>(nid));
                        }
                    }
            }
            rects.push_back(rect);
        }
    }
    return rects;
}

// Shrinks rect edges one pixel at a time while the score strictly improves.
RectPx refine_rect(const IntegralImage& ii, RectPx rect) {
    double score = block_score(ii, rect);
    for (;;) {
        RectPx best = rect;
        double best_score = score;
        const RectPx trials[4] = {
            {rect.x0 + 1, rect.y0, rect.x1, rect.y1},
            {rect.x0, rect.y0, rect.x1 - 1, rect.y1},
            {rect.x0, rect.y0 + 1, rect.x1, rect.y1},
            {rect.x0, rect.y0, rect.x1, rect.y1 - 1},
        };
        for (const RectPx& t : trials) {
            if (t.width() < 1 || t.height() < 1) continue;
            const double s = block_score(ii, t);
            if (s > best_score) {
                best_score = s;
                best = t;
            }
        }
        if (best_score <= score) return rect;
        rect = best;
        score = best_score;
    }
}

bool rects_overlap(const RectPx& a, const RectPx& b) {
    return std::max(a.x0, b.x0) < std::min(a.x1, b.x1) &&
           std::max(a.y0, b.y0) < std::min(a.y1, b.y1);
}

}  // namespace

std::vector<SalientBlock> extract_blocks(const SaliencyMap& map,
                                         const SaliencyParams& params) {
    if (!map.valid()) throw std::invalid_argument("extract_blocks: invalid map");
    if (params.max_blocks < 0 || params.max_blocks > 4)
        throw std::invalid_argument("extract_blocks: max_blocks must be in [0, 4]");

    SaliencyMap mask = binarize(map, params.tau_bin);
    const long long total = static_cast<long long>(map.width) * map.height;
    const long long min_area = std::max<long long>(1, total / 1000);

    struct Chosen {
        RectPx rect;
        double score;
    };
    std::vector<Chosen> chosen;

    while (static_cast<int>(chosen.size()) < params.max_blocks) {
        const IntegralImage ii = integral_image(mask);
        bool found = false;
        Chosen best{};
        for (const RectPx& rect : component_rects(mask)) {
            const RectPx refined = refine_rect(ii, rect);
            if (refined.area() < min_area) continue;
            const double score = block_score(ii, refined);
            if (score < params.s_min) continue;
            bool overlaps = false;
            for (const Chosen& c : chosen)
                if (rects_overlap(c.rect, refined)) {
                    overlaps = true;
                    break;
                }
            if (overlaps) continue;
            // Ties break toward the top-left-most rect.
            const auto key = std::make_tuple(-score, refined.y0, refined.x0, refined.y1,
                                             refined.x1);
            const auto best_key = std::make_tuple(-best.score, best.rect.y0, best.rect.x0,
                                                  best.rect.y1, best.rect.x1);
            if (!found || key < best_key) {
                best = {refined, score};
                found = true;
            }
        }
        if (!found) break;
        chosen.push_back(best);
        for (int y = best.rect.y0; y < best.rect.y1; ++y)
            for (int x = best.rect.x0; x < best.rect.x1; ++x) mask.at(x, y) = 0.0;
    }

    std::sort(chosen.begin(), chosen.end(), [](const Chosen& a, const Chosen& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.rect.y0 != b.rect.y0) return a.rect.y0 < b.rect.y0;
        return a.rect.x0 < b.rect.x0;
    });

    std::vector<SalientBlock> blocks;
    blocks.reserve(chosen.size());
    for (const Chosen& c : chosen) {
        SalientBlock block;
        block.bbox.x = static_cast<double>(c.rect.x0) / map.width;
        block.bbox.y = static_cast<double>(c.rect.y0) / map.height;
        block.bbox.w = static_cast<double>(c.rect.width()) / map.width;
        block.bbox.h = static_cast<double>(c.rect.height()) / map.height;
        block.score = c.score;
        blocks.push_back(block);
    }
    return blocks;
}

}  // namespace relayout
