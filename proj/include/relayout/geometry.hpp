#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace relayout {

/// Axis-aligned box in normalized canvas coordinates (fractions of the
/// canvas extent). x/y is the top-left corner.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double x2() const { return x + w; }
    double y2() const { return y + h; }
    double cx() const { return x + 0.5 * w; }
    double cy() const { return y + 0.5 * h; }
    double area() const { return w * h; }

    bool operator==(const BBox&) const = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }

    bool operator==(const Interval&) const = default;
};

enum class Axis { X, Y };

struct Element {
    std::string category;
    BBox bbox;
    std::optional<std::string> text;
};

struct Layout {
    int canvas_w_px = 0;
    int canvas_h_px = 0;
    std::vector<Element> elements;
    std::optional<std::string> saliency_ref;
    std::optional<std::string> canvas_ref;
};

/// Element count cap for annotated records.
inline constexpr int kMaxElements = 20;

double intersection_area(const BBox& a, const BBox& b);
BBox union_extent(const BBox& a, const BBox& b);

/// Intersection over union. When both boxes are degenerate (zero area) the
/// result is defined as 0 and *degenerate, if given, is set.
double iou(const BBox& a, const BBox& b, bool* degenerate = nullptr);

/// Intersection over detection: |a∩b| / |a|. Asymmetric; `a` is the
/// detection operand. Throws std::invalid_argument when |a| = 0.
double iod(const BBox& a, const BBox& b);
double iod(const Interval& a, const Interval& b);

/// Per-box axis projection, order preserved: [x, x+w] or [y, y+h].
std::vector<Interval> project(const std::vector<BBox>& boxes, Axis axis);

/// Partition of {0..n-1} under the given undirected edges. Components are
/// sorted by minimum member; members ascend. Out-of-range indices throw.
std::vector<std::vector<int>> connected_components(
    int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace relayout
