#include "relayout/region_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relayout {

const char* to_string(Direction d) { return d == Direction::Row ? "row" : "column"; }

const char* to_string(Align a) {
    switch (a) {
        case Align::Start: return "start";
        case Align::Center: return "center";
        case Align::End: return "end";
    }
    return "start";
}

namespace {

// IoD that treats a degenerate detection interval as non-overlapping instead
// of throwing; grouping has to cope with zero-extent projections.
double iod_or_zero(const Interval& a, const Interval& b) {
    if (a.length() <= 0.0) return 0.0;
    const double inter = std::min(a.hi, b.hi) - std::max(a.lo, b.lo);
    return inter <= 0.0 ? 0.0 : inter / a.length();
}

}  // namespace

std::vector<std::vector<int>> group_by_overlap(const std::vector<Interval>& intervals,
                                               double phi) {
    if (intervals.empty()) return {};
    if (phi <= 0.0 || phi > 1.0)
        throw std::invalid_argument("group_by_overlap: phi must be in (0, 1]");
    const int n = static_cast<int>(intervals.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double overlap = std::max(iod_or_zero(intervals[i], intervals[j]),
                                            iod_or_zero(intervals[j], intervals[i]));
            if (overlap >= phi) edges.emplace_back(i, j);
        }
    return connected_components(n, edges);
}

double group_variance(const std::vector<std::vector<int>>& groups) {
    if (groups.empty()) throw std::invalid_argument("group_variance: no groups");
    double mean = 0.0;
    for (const auto& g : groups) mean += static_cast<double>(g.size());
    mean /= static_cast<double>(groups.size());
    double var = 0.0;
    for (const auto& g : groups) {
        const double d = static_cast<double>(g.size()) - mean;
        var += d * d;
    }
    return var / static_cast<double>(groups.size());
}

DirectionEstimate estimate_direction(const std::vector<BBox>& boxes, double phi) {
    if (boxes.size() < 2)
        throw std::invalid_argument("estimate_direction: need at least 2 boxes");
    auto gx = group_by_overlap(project(boxes, Axis::X), phi);
    auto gy = group_by_overlap(project(boxes, Axis::Y), phi);
    if (gx.size() == 1 && gy.size() > 1) return {Direction::Column, std::move(gy)};
    if (gy.size() == 1 && gx.size() > 1) return {Direction::Row, std::move(gx)};
    const double vx = group_variance(gx);
    const double vy = group_variance(gy);
    if (vx <= vy) return {Direction::Row, std::move(gx)};
    return {Direction::Column, std::move(gy)};
}

namespace {

RegionNode make_leaf(const Layout& layout, int index) {
    RegionNode leaf;
    leaf.kind = NodeKind::Leaf;
    leaf.element_index = index;
    leaf.bbox = layout.elements[index].bbox;
    return leaf;
}

BBox tight_bbox(const std::vector<RegionNode>& children) {
    BBox box = children.front().bbox;
    for (size_t i = 1; i < children.size(); ++i) box = union_extent(box, children[i].bbox);
    return box;
}

RegionNode build_subtree(const Layout& layout, const std::vector<int>& indices, double phi) {
    if (indices.size() == 1) return make_leaf(layout, indices.front());

    std::vector<BBox> boxes;
    boxes.reserve(indices.size());
    for (int idx : indices) boxes.push_back(layout.elements[idx].bbox);
    DirectionEstimate est = estimate_direction(boxes, phi);

    RegionNode region;
    region.kind = NodeKind::Region;
    region.direction = est.direction;

    if (est.groups.size() == 1) {
        // Fully stacked elements: no axis separates them. Emit the whole
        // group as flagged leaves in reading order.
        region.unsplittable = true;
        std::vector<int> order = indices;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const BBox& ba = layout.elements[a].bbox;
            const BBox& bb = layout.elements[b].bbox;
            if (ba.y != bb.y) return ba.y < bb.y;
            if (ba.x != bb.x) return ba.x < bb.x;
            return a < b;
        });
        for (int idx : order) region.children.push_back(make_leaf(layout, idx));
    } else {
        for (const auto& group : est.groups) {
            std::vector<int> sub;
            sub.reserve(group.size());
            for (int local : group) sub.push_back(indices[local]);
            region.children.push_back(build_subtree(layout, sub, phi));
        }
        const bool row = est.direction == Direction::Row;
        std::stable_sort(region.children.begin(), region.children.end(),
                         [row](const RegionNode& a, const RegionNode& b) {
                             const double amain = row ? a.bbox.x : a.bbox.y;
                             const double bmain = row ? b.bbox.x : b.bbox.y;
                             if (amain != bmain) return amain < bmain;
                             const double across = row ? a.bbox.y : a.bbox.x;
                             const double bcross = row ? b.bbox.y : b.bbox.x;
                             return across < bcross;
                         });
    }
    region.bbox = tight_bbox(region.children);
    return region;
}

}  // namespace

RegionNode build_region_tree(const Layout& layout, double phi) {
    if (layout.elements.empty())
        throw std::invalid_argument("build_region_tree: layout has no elements");
    std::vector<int> all(layout.elements.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return build_subtree(layout, all, phi);
}

void detect_parallel(RegionNode& node, double eps_par) {
    if (!node.is_region()) return;
    node.is_parallel = false;
    if (node.children.size() < 2) return;
    double w_min = 1e30, w_max = 0.0, h_min = 1e30, h_max = 0.0;
    for (const RegionNode& c : node.children) {
        if (!c.is_leaf()) return;
        w_min = std::min(w_min, c.bbox.w);
        w_max = std::max(w_max, c.bbox.w);
        h_min = std::min(h_min, c.bbox.h);
        h_max = std::max(h_max, c.bbox.h);
    }
    const bool w_uniform = w_max <= 0.0 || (w_max - w_min) / w_max <= eps_par;
    const bool h_uniform = h_max <= 0.0 || (h_max - h_min) / h_max <= eps_par;
    node.is_parallel = w_uniform && h_uniform;
}

void compute_margins(RegionNode& node) {
    if (!node.is_region()) return;
    const bool row = node.direction == Direction::Row;
    double prev_max = row ? node.bbox.x : node.bbox.y;
    for (RegionNode& c : node.children) {
        const double lead = row ? c.bbox.x : c.bbox.y;
        double margin = lead - prev_max;
        c.margin_flagged = false;
        if (margin < 0.0) {
            if (margin > -1e-4) {
                margin = 0.0;
            } else {
                c.margin_flagged = true;
            }
        }
        c.margin = margin;
        prev_max = row ? c.bbox.x2() : c.bbox.y2();
    }
}

void infer_align(RegionNode& node, double tol) {
    if (!node.is_region()) return;
    const bool row = node.direction == Direction::Row;
    double lead_min = 1e30, lead_max = -1e30;
    double mid_min = 1e30, mid_max = -1e30;
    double trail_min = 1e30, trail_max = -1e30;
    for (const RegionNode& c : node.children) {
        const double lead = row ? c.bbox.y : c.bbox.x;
        const double trail = row ? c.bbox.y2() : c.bbox.x2();
        const double mid = 0.5 * (lead + trail);
        lead_min = std::min(lead_min, lead);
        lead_max = std::max(lead_max, lead);
        mid_min = std::min(mid_min, mid);
        mid_max = std::max(mid_max, mid);
        trail_min = std::min(trail_min, trail);
        trail_max = std::max(trail_max, trail);
    }
    if (lead_max - lead_min <= tol)
        node.align = Align::Start;
    else if (mid_max - mid_min <= tol)
        node.align = Align::Center;
    else if (trail_max - trail_min <= tol)
        node.align = Align::End;
    else
        node.align = Align::Center;
}

void annotate_tree(RegionNode& node, const TreeParams& params) {
    if (!node.is_region()) return;
    for (RegionNode& c : node.children) annotate_tree(c, params);
    compute_margins(node);
    infer_align(node, params.align_tol);
    detect_parallel(node, params.eps_par);
}

RegionNode build_annotated_tree(const Layout& layout, const TreeParams& params) {
    RegionNode tree = build_region_tree(layout, params.phi);
    annotate_tree(tree, params);
    return tree;
}

namespace {

void collect_leaves(const RegionNode& node, std::vector<std::pair<int, BBox>>& out) {
    if (node.is_leaf()) {
        out.emplace_back(node.element_index, node.bbox);
        return;
    }
    for (const RegionNode& c : node.children) collect_leaves(c, out);
}

}  // namespace

std::vector<std::pair<int, BBox>> render_tree(const RegionNode& node) {
    std::vector<std::pair<int, BBox>> out;
    collect_leaves(node, out);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].first == out[i - 1].first)
            throw std::invalid_argument("render_tree: duplicate element index " +
                                        std::to_string(out[i].first));
    return out;
}

namespace {

bool has_nested_region(const RegionNode& node) {
    if (!node.is_region()) return false;
    for (const RegionNode& c : node.children)
        if (c.is_region()) return true;
    for (const RegionNode& c : node.children)
        if (has_nested_region(c)) return true;
    return false;
}

bool has_parallel(const RegionNode& node) {
    if (node.is_parallel) return true;
    for (const RegionNode& c : node.children)
        if (has_parallel(c)) return true;
    return false;
}

}  // namespace

bool is_hard(const Layout& layout, const RegionNode& tree) {
    if (static_cast<int>(layout.elements.size()) > 4) return true;
    return has_nested_region(tree) || has_parallel(tree);
}

nlohmann::json tree_to_json(const RegionNode& node) {
    nlohmann::json j;
    j["margin"] = node.margin;
    j["box"] = {node.bbox.x, node.bbox.y, node.bbox.w, node.bbox.h};
    if (node.is_leaf()) {
        j["kind"] = "leaf";
        j["element"] = node.element_index;
    } else {
        j["kind"] = "region";
        j["direction"] = to_string(node.direction);
        j["align"] = to_string(node.align);
        j["parallel"] = node.is_parallel;
        if (node.unsplittable) j["unsplittable"] = true;
        auto& children = j["children"] = nlohmann::json::array();
        for (const RegionNode& c : node.children) children.push_back(tree_to_json(c));
    }
    return j;
}

}  // namespace relayout
