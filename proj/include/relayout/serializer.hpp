#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relayout/region_tree.hpp"
#include "relayout/saliency.hpp"

namespace relayout {

enum class Task { GenWithClass, GenWithClassAndSize, Completion };
enum class DocKind { Input, Output };

const char* to_string(Task t);
Task task_from_string(const std::string& name);
/// Human-readable task line, e.g. "layout generation with given class".
const char* task_description(Task t);

/// One serialized sequence. Input docs carry mask tokens for the coordinates
/// the model must fill in; output docs carry the full relation annotation.
struct SequenceDoc {
    DocKind kind = DocKind::Input;
    Task task = Task::GenWithClass;
    std::string text;
};

inline constexpr const char* kMaskTokens[4] = {"<X>", "<Y>", "<W>", "<H>"};

/// Per-mille coordinate quantization. Values live on a 1000-bin grid over
/// [0,1]; dequantization returns bin centers so the round-trip error stays
/// within 0.5/1000 everywhere, including v = 1.
int quantize_coord(double v);
double dequantize_coord(int q);

/// One element constraint of an input sequence. `size_pm` conditions w/h
/// (per-mille); `box_pm` conditions the full geometry (completion task).
struct ElementConstraint {
    std::string category;
    std::optional<std::string> text;
    std::optional<std::array<int, 2>> size_pm;
    std::optional<std::array<int, 4>> box_pm;
};

SequenceDoc serialize_input(const std::vector<ElementConstraint>& constraints, Task task);

SequenceDoc serialize_output(const RegionNode& tree, const std::vector<SalientBlock>& blocks,
                             const Layout& layout, Task task = Task::GenWithClass);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParsedOutput {
    RegionNode tree;
    std::vector<SalientBlock> blocks;
    std::vector<std::string> categories;  // per element index, in document order

    /// Rebuilds a Layout (dequantized boxes, given canvas size) so a parsed
    /// doc can be re-serialized or evaluated.
    Layout as_layout(int canvas_w_px = 1000, int canvas_h_px = 1000) const;
};

/// Exact inverse of serialize_output on its image. Malformed docs throw
/// ParseError naming the offending line.
ParsedOutput parse_output(const SequenceDoc& doc);

/// Number of mask-token occurrences in a doc.
int count_mask_tokens(const SequenceDoc& doc);

}  // namespace relayout
