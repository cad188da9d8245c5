#include "relayout/serializer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace relayout {

const char* to_string(Task t) {
    switch (t) {
        case Task::GenWithClass: return "gen_with_class";
        case Task::GenWithClassAndSize: return "gen_with_class_and_size";
        case Task::Completion: return "completion";
    }
    return "gen_with_class";
}

Task task_from_string(const std::string& name) {
    if (name == "gen_with_class") return Task::GenWithClass;
    if (name == "gen_with_class_and_size") return Task::GenWithClassAndSize;
    if (name == "completion") return Task::Completion;
    throw std::invalid_argument("unknown task '" + name + "'");
}

const char* task_description(Task t) {
    switch (t) {
        case Task::GenWithClass: return "layout generation with given class";
        case Task::GenWithClassAndSize: return "layout generation with given class and size";
        case Task::Completion: return "layout completion";
    }
    return "";
}

int quantize_coord(double v) {
    if (std::isnan(v)) throw std::invalid_argument("quantize_coord: NaN coordinate");
    if (v < -1e-9 || v > 1.0 + 1e-9)
        throw std::out_of_range("quantize_coord: coordinate " + std::to_string(v) +
                                " outside [0,1]");
    const int q = static_cast<int>(std::floor(v * 1000.0));
    return std::clamp(q, 0, 999);
}

double dequantize_coord(int q) {
    if (q < 0 || q > 999)
        throw std::out_of_range("dequantize_coord: value " + std::to_string(q) +
                                " outside [0,999]");
    return (q + 0.5) / 1000.0;
}

namespace {

constexpr const char* kInstruction =
    "Arrange the given elements on the canvas into a balanced poster layout.";

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out.push_back(s[i]);
            continue;
        }
        if (s.compare(i, 5, "&amp;") == 0) {
            out.push_back('&');
            i += 4;
        } else if (s.compare(i, 4, "&lt;") == 0) {
            out.push_back('<');
            i += 3;
        } else if (s.compare(i, 4, "&gt;") == 0) {
            out.push_back('>');
            i += 3;
        } else if (s.compare(i, 6, "&quot;") == 0) {
            out.push_back('"');
            i += 5;
        } else {
            out.push_back('&');
        }
    }
    return out;
}

std::string format_score(double score) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", score);
    return buf;
}

// Margin is annotation, not geometry: overlapping children carry a negative
// value in the tree but serialize as 0.
int quantize_margin(double m) { return quantize_coord(std::clamp(m, 0.0, 1.0)); }

void append_saliency_tag(std::string& out, const SalientBlock& block) {
    out += "<div class=\"saliency\" x=\"" + std::to_string(quantize_coord(block.bbox.x)) +
           "\" y=\"" + std::to_string(quantize_coord(block.bbox.y)) + "\" w=\"" +
           std::to_string(quantize_coord(block.bbox.w)) + "\" h=\"" +
           std::to_string(quantize_coord(block.bbox.h)) + "\" score=\"" +
           format_score(block.score) + "\"/>\n";
}

void append_node(std::string& out, const RegionNode& node, const Layout& layout, int depth) {
    const std::string indent(static_cast<size_t>(depth) * 2, ' ');
    if (node.is_leaf()) {
        if (node.element_index < 0 ||
            node.element_index >= static_cast<int>(layout.elements.size()))
            throw std::invalid_argument("serialize_output: leaf index out of range");
        const Element& el = layout.elements[node.element_index];
        out += indent + "<div class=\"element\" margin=\"" +
               std::to_string(quantize_margin(node.margin)) + "\" x=\"" +
               std::to_string(quantize_coord(node.bbox.x)) + "\" y=\"" +
               std::to_string(quantize_coord(node.bbox.y)) + "\" w=\"" +
               std::to_string(quantize_coord(node.bbox.w)) + "\" h=\"" +
               std::to_string(quantize_coord(node.bbox.h)) + "\" category=\"" +
               escape_text(el.category) + "\"/>\n";
        return;
    }
    out += indent + "<div class=\"region\" direction=\"" +
           std::string(to_string(node.direction)) + "\" align=\"" +
           std::string(to_string(node.align)) + "\" parallel=\"" +
           (node.is_parallel ? "true" : "false") + "\" margin=\"" +
           std::to_string(quantize_margin(node.margin)) + "\" x=\"" +
           std::to_string(quantize_coord(node.bbox.x)) + "\" y=\"" +
           std::to_string(quantize_coord(node.bbox.y)) + "\" w=\"" +
           std::to_string(quantize_coord(node.bbox.w)) + "\" h=\"" +
           std::to_string(quantize_coord(node.bbox.h)) + "\">\n";
    for (const RegionNode& c : node.children) append_node(out, c, layout, depth + 1);
    out += indent + "</div>\n";
}

}  // namespace

SequenceDoc serialize_input(const std::vector<ElementConstraint>& constraints, Task task) {
    if (constraints.empty())
        throw std::invalid_argument("serialize_input: need at least one constraint");
    std::string text = std::string(kInstruction) + "\n";
    text += "Task: " + std::string(task_description(task)) + "\n";
    for (const ElementConstraint& c : constraints) {
        std::string x = "<X>", y = "<Y>", w = "<W>", h = "<H>";
        switch (task) {
            case Task::GenWithClass:
                break;
            case Task::GenWithClassAndSize: {
                if (!c.size_pm)
                    throw std::invalid_argument(
                        "serialize_input: size-conditioned task needs size_pm");
                w = std::to_string((*c.size_pm)[0]);
                h = std::to_string((*c.size_pm)[1]);
                break;
            }
            case Task::Completion: {
                if (c.box_pm) {
                    x = std::to_string((*c.box_pm)[0]);
                    y = std::to_string((*c.box_pm)[1]);
                    w = std::to_string((*c.box_pm)[2]);
                    h = std::to_string((*c.box_pm)[3]);
                }
                break;
            }
        }
        text += "<div class=\"element\" x=\"" + x + "\" y=\"" + y + "\" w=\"" + w +
                "\" h=\"" + h + "\" category=\"" + escape_text(c.category) + "\"";
        if (c.text)
            text += ">" + escape_text(*c.text) + "</div>\n";
        else
            text += "/>\n";
    }
    return SequenceDoc{DocKind::Input, task, std::move(text)};
}

SequenceDoc serialize_output(const RegionNode& tree, const std::vector<SalientBlock>& blocks,
                             const Layout& layout, Task task) {
    render_tree(tree);  // validates leaf indices are unique
    std::string text;
    for (const SalientBlock& b : blocks) append_saliency_tag(text, b);
    append_node(text, tree, layout, 0);
    return SequenceDoc{DocKind::Output, task, std::move(text)};
}

namespace {

struct TagLine {
    int indent = 0;
    bool closing = false;     // "</div>"
    bool self_closing = false;
    std::string cls;
    std::vector<std::pair<std::string, std::string>> attrs;
};

[[noreturn]] void fail(int lineno, const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

TagLine parse_tag_line(const std::string& line, int lineno) {
    TagLine tag;
    size_t pos = 0;
    while (pos < line.size() && line[pos] == ' ') ++pos;
    tag.indent = static_cast<int>(pos);

    if (line.compare(pos, 6, "</div>") == 0) {
        if (pos + 6 != line.size()) fail(lineno, "trailing content after </div>");
        tag.closing = true;
        return tag;
    }
    if (line.compare(pos, 5, "<div ") != 0) fail(lineno, "expected <div> tag");
    pos += 5;

    while (pos < line.size() && line[pos] != '/' && line[pos] != '>') {
        size_t eq = line.find('=', pos);
        if (eq == std::string::npos || eq + 1 >= line.size() || line[eq + 1] != '"')
            fail(lineno, "malformed attribute near column " + std::to_string(pos + 1));
        std::string name = line.substr(pos, eq - pos);
        size_t end = line.find('"', eq + 2);
        if (end == std::string::npos) fail(lineno, "unterminated attribute value");
        std::string value = line.substr(eq + 2, end - eq - 2);
        for (const auto& [existing, _] : tag.attrs)
            if (existing == name) fail(lineno, "duplicate attribute '" + name + "'");
        tag.attrs.emplace_back(std::move(name), std::move(value));
        pos = end + 1;
        while (pos < line.size() && line[pos] == ' ') ++pos;
    }
    if (pos >= line.size()) fail(lineno, "unterminated tag");
    if (line[pos] == '/') {
        if (pos + 1 >= line.size() || line[pos + 1] != '>') fail(lineno, "malformed tag end");
        tag.self_closing = true;
        pos += 2;
    } else {
        ++pos;  // '>'
    }
    if (pos != line.size()) fail(lineno, "trailing content after tag");

    for (const auto& [name, value] : tag.attrs)
        if (name == "class") tag.cls = value;
    if (tag.cls.empty()) fail(lineno, "tag without class attribute");
    return tag;
}

int parse_pm(const TagLine& tag, const std::string& name, int lineno) {
    for (const auto& [attr, value] : tag.attrs)
        if (attr == name) {
            size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(value, &used);
            } catch (const std::exception&) {
                fail(lineno, "attribute '" + name + "' is not an integer");
            }
            if (used != value.size()) fail(lineno, "attribute '" + name + "' is not an integer");
            if (v < 0 || v > 999)
                fail(lineno, "attribute '" + name + "' = " + value + " outside [0,999]");
            return v;
        }
    fail(lineno, "missing attribute '" + name + "'");
}

std::string parse_str(const TagLine& tag, const std::string& name, int lineno) {
    for (const auto& [attr, value] : tag.attrs)
        if (attr == name) return value;
    fail(lineno, "missing attribute '" + name + "'");
}

void check_known_attrs(const TagLine& tag, std::initializer_list<const char*> known,
                       int lineno) {
    for (const auto& [name, _] : tag.attrs) {
        bool ok = false;
        for (const char* k : known)
            if (name == k) ok = true;
        if (!ok) fail(lineno, "unknown attribute '" + name + "'");
    }
}

BBox parse_box(const TagLine& tag, int lineno) {
    BBox box;
    box.x = dequantize_coord(parse_pm(tag, "x", lineno));
    box.y = dequantize_coord(parse_pm(tag, "y", lineno));
    box.w = dequantize_coord(parse_pm(tag, "w", lineno));
    box.h = dequantize_coord(parse_pm(tag, "h", lineno));
    return box;
}

}  // namespace

ParsedOutput parse_output(const SequenceDoc& doc) {
    if (doc.kind != DocKind::Output)
        throw std::invalid_argument("parse_output: doc.kind must be output");

    ParsedOutput out;
    std::vector<RegionNode*> stack;  // open regions
    bool root_done = false;

    std::istringstream in(doc.text);
    std::string line;
    int lineno = 0;

    auto attach = [&](RegionNode&& node, int lineno_) -> RegionNode* {
        if (stack.empty()) {
            if (root_done) fail(lineno_, "content after the root node closed");
            out.tree = std::move(node);
            root_done = true;
            return &out.tree;
        }
        stack.back()->children.push_back(std::move(node));
        return &stack.back()->children.back();
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) fail(lineno, "empty line");
        TagLine tag = parse_tag_line(line, lineno);

        if (tag.closing) {
            if (stack.empty()) fail(lineno, "unmatched </div>");
            if (tag.indent != static_cast<int>(stack.size() - 1) * 2)
                fail(lineno, "bad indentation for </div>");
            stack.pop_back();
            continue;
        }
        if (tag.indent != static_cast<int>(stack.size()) * 2)
            fail(lineno, "bad indentation");

        if (tag.cls == "saliency") {
            if (!stack.empty() || root_done || !out.tree.children.empty())
                fail(lineno, "saliency tags must precede the region structure");
            if (!tag.self_closing) fail(lineno, "saliency tag must be self-closing");
            check_known_attrs(tag, {"class", "x", "y", "w", "h", "score"}, lineno);
            SalientBlock block;
            block.bbox = parse_box(tag, lineno);
            const std::string score = parse_str(tag, "score", lineno);
            size_t used = 0;
            try {
                block.score = std::stod(score, &used);
            } catch (const std::exception&) {
                fail(lineno, "bad score value");
            }
            if (used != score.size() || std::abs(block.score) > 1.0 + 1e-9)
                fail(lineno, "bad score value");
            out.blocks.push_back(block);
        } else if (tag.cls == "element") {
            if (!tag.self_closing) fail(lineno, "element tag must be self-closing");
            check_known_attrs(tag, {"class", "margin", "x", "y", "w", "h", "category"},
                              lineno);
            RegionNode leaf;
            leaf.kind = NodeKind::Leaf;
            leaf.margin = dequantize_coord(parse_pm(tag, "margin", lineno));
            leaf.bbox = parse_box(tag, lineno);
            leaf.element_index = static_cast<int>(out.categories.size());
            out.categories.push_back(unescape_text(parse_str(tag, "category", lineno)));
            attach(std::move(leaf), lineno);
        } else if (tag.cls == "region") {
            if (tag.self_closing) fail(lineno, "region tag cannot be self-closing");
            check_known_attrs(
                tag, {"class", "direction", "align", "parallel", "margin", "x", "y", "w", "h"},
                lineno);
            RegionNode region;
            region.kind = NodeKind::Region;
            const std::string dir = parse_str(tag, "direction", lineno);
            if (dir == "row")
                region.direction = Direction::Row;
            else if (dir == "column")
                region.direction = Direction::Column;
            else
                fail(lineno, "bad direction '" + dir + "'");
            const std::string align = parse_str(tag, "align", lineno);
            if (align == "start")
                region.align = Align::Start;
            else if (align == "center")
                region.align = Align::Center;
            else if (align == "end")
                region.align = Align::End;
            else
                fail(lineno, "bad align '" + align + "'");
            const std::string parallel = parse_str(tag, "parallel", lineno);
            if (parallel == "true")
                region.is_parallel = true;
            else if (parallel == "false")
                region.is_parallel = false;
            else
                fail(lineno, "bad parallel '" + parallel + "'");
            region.margin = dequantize_coord(parse_pm(tag, "margin", lineno));
            region.bbox = parse_box(tag, lineno);
            RegionNode* attached = attach(std::move(region), lineno);
            stack.push_back(attached);
        } else {
            fail(lineno, "unknown tag class '" + tag.cls + "'");
        }
    }

    if (!stack.empty()) fail(lineno + 1, "unexpected end of input: unclosed region");
    if (!root_done) fail(lineno + 1, "unexpected end of input: no root node");
    return out;
}

Layout ParsedOutput::as_layout(int canvas_w_px, int canvas_h_px) const {
    Layout layout;
    layout.canvas_w_px = canvas_w_px;
    layout.canvas_h_px = canvas_h_px;
    auto rendered = render_tree(tree);
    if (rendered.size() != categories.size())
        throw std::logic_error("ParsedOutput: leaf/category count mismatch");
    for (const auto& [index, box] : rendered) {
        Element e;
        e.category = categories[index];
        e.bbox = box;
        layout.elements.push_back(std::move(e));
    }
    return layout;
}

int count_mask_tokens(const SequenceDoc& doc) {
    int count = 0;
    for (const char* token : kMaskTokens) {
        size_t pos = 0;
        const std::string needle(token);
        while ((pos = doc.text.find(needle, pos)) != std::string::npos) {
            ++count;
            pos += needle.size();
        }
    }
    return count;
}

}  // namespace relayout
