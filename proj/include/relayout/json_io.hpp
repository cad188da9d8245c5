#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relayout/geometry.hpp"

namespace relayout {

/// Audit counters for ingestion-time box clamping.
struct IngestStats {
    int clamped_boxes = 0;
    int records = 0;
};

/// Parses one layout record:
/// {"canvas": [W, H], "elements": [{"category": str, "box_px": [x,y,w,h],
///  "text": str|null}], "saliency": path|null, "canvas_image": path|null}.
/// Pixel boxes are normalized by the canvas size and clamped to [0,1].
Layout layout_from_json(const nlohmann::json& record, IngestStats* stats = nullptr);

/// Inverse of layout_from_json; boxes are written back in pixel units.
nlohmann::json layout_to_json(const Layout& layout);

std::vector<Layout> read_layout_jsonl(std::istream& in, IngestStats* stats = nullptr);
std::vector<Layout> read_layout_jsonl_file(const std::string& path, IngestStats* stats = nullptr);
void write_layout_jsonl(std::ostream& out, const std::vector<Layout>& layouts);

}  // namespace relayout
