#include "relayout/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace relayout {

double intersection_area(const BBox& a, const BBox& b) {
    const double w = std::min(a.x2(), b.x2()) - std::max(a.x, b.x);
    const double h = std::min(a.y2(), b.y2()) - std::max(a.y, b.y);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

BBox union_extent(const BBox& a, const BBox& b) {
    const double x = std::min(a.x, b.x);
    const double y = std::min(a.y, b.y);
    const double x2 = std::max(a.x2(), b.x2());
    const double y2 = std::max(a.y2(), b.y2());
    return BBox{x, y, x2 - x, y2 - y};
}

double iou(const BBox& a, const BBox& b, bool* degenerate) {
    if (degenerate) *degenerate = false;
    const double inter = intersection_area(a, b);
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return inter / uni;
}

double iod(const BBox& a, const BBox& b) {
    const double area = a.area();
    if (area <= 0.0) throw std::invalid_argument("iod: detection box has zero area");
    return intersection_area(a, b) / area;
}

double iod(const Interval& a, const Interval& b) {
    const double len = a.length();
    if (len <= 0.0) throw std::invalid_argument("iod: detection interval has zero length");
    const double inter = std::min(a.hi, b.hi) - std::max(a.lo, b.lo);
    return inter <= 0.0 ? 0.0 : inter / len;
}

std::vector<Interval> project(const std::vector<BBox>& boxes, Axis axis) {
    std::vector<Interval> out;
    out.reserve(boxes.size());
    for (const BBox& b : boxes) {
        if (axis == Axis::X)
            out.push_back({b.x, b.x2()});
        else
            out.push_back({b.y, b.y2()});
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::vector<std::vector<int>> connected_components(
    int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("connected_components: negative count");
    UnionFind uf(n);
    for (const auto& [i, j] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw std::out_of_range("connected_components: edge index out of range");
        uf.unite(i, j);
    }
    // Roots are always the minimum member, so grouping by root and scanning
    // ascending yields the required deterministic ordering.
    std::vector<std::vector<int>> by_root(n);
    for (int v = 0; v < n; ++v) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& members : by_root)
        if (!members.empty()) out.push_back(std::move(members));
    return out;
}

}  // namespace relayout
