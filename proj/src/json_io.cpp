#include "relayout/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace relayout {

namespace {

// Clamps a 1-d span to [0,1]; reports whether anything moved noticeably.
void clamp_span(double& lo, double& len, bool& touched) {
    const double orig_lo = lo;
    const double orig_len = len;
    lo = std::clamp(lo, 0.0, 1.0);
    len = std::max(len, 0.0);
    if (lo + len > 1.0) len = 1.0 - lo;
    if (std::abs(lo - orig_lo) > 1e-9 || std::abs(len - orig_len) > 1e-9) touched = true;
}

}  // namespace

Layout layout_from_json(const nlohmann::json& record, IngestStats* stats) {
    Layout layout;
    const auto& canvas = record.at("canvas");
    layout.canvas_w_px = canvas.at(0).get<int>();
    layout.canvas_h_px = canvas.at(1).get<int>();
    if (layout.canvas_w_px <= 0 || layout.canvas_h_px <= 0)
        throw std::invalid_argument("layout_from_json: canvas dimensions must be positive");

    const auto& elements = record.at("elements");
    if (elements.empty())
        throw std::invalid_argument("layout_from_json: record has no elements");
    if (static_cast<int>(elements.size()) > kMaxElements)
        throw std::invalid_argument("layout_from_json: more than " +
                                    std::to_string(kMaxElements) + " elements");

    for (const auto& el : elements) {
        Element e;
        e.category = el.at("category").get<std::string>();
        const auto& box = el.at("box_px");
        e.bbox.x = box.at(0).get<double>() / layout.canvas_w_px;
        e.bbox.y = box.at(1).get<double>() / layout.canvas_h_px;
        e.bbox.w = box.at(2).get<double>() / layout.canvas_w_px;
        e.bbox.h = box.at(3).get<double>() / layout.canvas_h_px;
        bool touched = false;
        clamp_span(e.bbox.x, e.bbox.w, touched);
        clamp_span(e.bbox.y, e.bbox.h, touched);
        if (touched && stats) stats->clamped_boxes++;
        if (el.contains("text") && !el.at("text").is_null())
            e.text = el.at("text").get<std::string>();
        layout.elements.push_back(std::move(e));
    }

    if (record.contains("saliency") && !record.at("saliency").is_null())
        layout.saliency_ref = record.at("saliency").get<std::string>();
    if (record.contains("canvas_image") && !record.at("canvas_image").is_null())
        layout.canvas_ref = record.at("canvas_image").get<std::string>();

    if (stats) stats->records++;
    return layout;
}

nlohmann::json layout_to_json(const Layout& layout) {
    nlohmann::json record;
    record["canvas"] = {layout.canvas_w_px, layout.canvas_h_px};
    auto& elements = record["elements"] = nlohmann::json::array();
    for (const Element& e : layout.elements) {
        nlohmann::json el;
        el["category"] = e.category;
        el["box_px"] = {e.bbox.x * layout.canvas_w_px, e.bbox.y * layout.canvas_h_px,
                        e.bbox.w * layout.canvas_w_px, e.bbox.h * layout.canvas_h_px};
        el["text"] = e.text ? nlohmann::json(*e.text) : nlohmann::json(nullptr);
        elements.push_back(std::move(el));
    }
    record["saliency"] = layout.saliency_ref ? nlohmann::json(*layout.saliency_ref)
                                             : nlohmann::json(nullptr);
    record["canvas_image"] = layout.canvas_ref ? nlohmann::json(*layout.canvas_ref)
                                               : nlohmann::json(nullptr);
    return record;
}

std::vector<Layout> read_layout_jsonl(std::istream& in, IngestStats* stats) {
    std::vector<Layout> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
            out.push_back(layout_from_json(record, stats));
        } catch (const std::exception& e) {
            throw std::runtime_error("jsonl line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<Layout> read_layout_jsonl_file(const std::string& path, IngestStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_layout_jsonl(in, stats);
}

void write_layout_jsonl(std::ostream& out, const std::vector<Layout>& layouts) {
    for (const Layout& layout : layouts) out << layout_to_json(layout).dump() << "\n";
}

}  // namespace relayout
