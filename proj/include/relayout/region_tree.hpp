#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "relayout/geometry.hpp"

namespace relayout {

enum class Direction { Row, Column };
enum class Align { Start, Center, End };
enum class NodeKind { Region, Leaf };

const char* to_string(Direction d);
const char* to_string(Align a);

/// Node of the recursive relation tree. A region arranges its children along
/// one direction; a leaf wraps a single layout element. `margin` is the gap
/// to the previous sibling (or the region edge for the first child) along the
/// parent's direction: margin-left in rows, margin-top in columns.
struct RegionNode {
    NodeKind kind = NodeKind::Leaf;
    BBox bbox;
    double margin = 0.0;
    bool margin_flagged = false;  // margin kept negative (overlap beyond tolerance)

    // Region fields.
    Direction direction = Direction::Row;
    Align align = Align::Start;
    bool is_parallel = false;
    bool unsplittable = false;  // degenerate region that no axis could split
    std::vector<RegionNode> children;

    // Leaf fields.
    int element_index = -1;

    bool is_leaf() const { return kind == NodeKind::Leaf; }
    bool is_region() const { return kind == NodeKind::Region; }
};

struct DirectionEstimate {
    Direction direction = Direction::Row;
    std::vector<std::vector<int>> groups;
};

struct TreeParams {
    double phi = 0.5;        // overlap threshold for GroupByOverlap
    double eps_par = 0.05;   // relative size tolerance for parallel detection
    double align_tol = 0.01; // cross-axis edge tolerance for align inference
};

/// Connected components of the symmetric-IoD overlap graph: an edge links
/// i and j when max(iod(i,j), iod(j,i)) >= phi. Empty input yields {}.
std::vector<std::vector<int>> group_by_overlap(const std::vector<Interval>& intervals,
                                               double phi);

/// Population variance of the per-group cardinalities.
double group_variance(const std::vector<std::vector<int>>& groups);

/// Direction estimation over >= 2 boxes: single x-group with several
/// y-groups means column, the mirror case means row; otherwise the axis with
/// smaller group-size variance wins, ties resolving to row.
DirectionEstimate estimate_direction(const std::vector<BBox>& boxes, double phi);

/// Recursive decomposition of a layout into the relation tree. Groups of one
/// element collapse to leaves; groups that no axis can split become a region
/// flagged `unsplittable` with leaves in reading order.
RegionNode build_region_tree(const Layout& layout, double phi);

/// Marks a region parallel when all children are leaves and share both
/// dimensions within relative tolerance eps_par.
void detect_parallel(RegionNode& node, double eps_par);

/// Fills in child margins along the region direction. Slight overlaps
/// (< 1e-4) clamp to zero; larger ones stay negative with margin_flagged.
void compute_margins(RegionNode& node);

/// Infers cross-axis alignment from child edges, priority start > center >
/// end; center when nothing agrees within tol.
void infer_align(RegionNode& node, double tol);

/// build_region_tree followed by detect_parallel / compute_margins /
/// infer_align applied to every region.
RegionNode build_annotated_tree(const Layout& layout, const TreeParams& params = {});
void annotate_tree(RegionNode& node, const TreeParams& params);

/// Leaf boxes sorted by element index. Throws on duplicate indices.
std::vector<std::pair<int, BBox>> render_tree(const RegionNode& node);

/// Hard-split test: nested regions, any parallel region, or more than four
/// elements. Expects an annotated tree.
bool is_hard(const Layout& layout, const RegionNode& tree);

/// Nested JSON export for audits and golden tests.
nlohmann::json tree_to_json(const RegionNode& node);

}  // namespace relayout
