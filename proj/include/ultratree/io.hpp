#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ultratree/filling.hpp"
#include "ultratree/metric_space.hpp"

namespace ultratree::io {

inline constexpr int kFormatVersion = 1;

/// Space document:
///   {"format_version": 1, "points": ["a", ...], "omega": "w" | null,
///    "encoding": "distances" | "heights",
///    "matrix": [row-major strict upper triangle, n(n-1)/2 entries]}
/// Entries are numbers or the strings "inf" / "-inf". A full n x n nested
/// matrix is accepted too and is checked for symmetry.
///
/// Throws ParseError for malformed documents and AxiomViolation (with the
/// axiom name) for documents that do not describe an extended metric space.
ExtendedMetricSpace parse_space(std::string_view text);
ExtendedMetricSpace load_space(const std::filesystem::path& path);

nlohmann::json space_to_json(const ExtendedMetricSpace& space, Encoding encoding = Encoding::distances);
std::string serialize_space(const ExtendedMetricSpace& space, Encoding encoding = Encoding::distances);

/// Tree point as {"anchor": label, "t": real}, or the shorthand "label:t".
TreePoint parse_tree_point(const FillingTree& tree, std::string_view text);
nlohmann::json tree_point_to_json(const FillingTree& tree, const TreePoint& p);

/// JSON array of tree point objects, a single object, or one "label t" per line.
std::vector<TreePoint> parse_tree_points(const FillingTree& tree, std::string_view text);

/// Map file: one "source_label target_label" pair per line, '#' comments.
std::vector<std::pair<std::string, std::string>> parse_label_pairs(std::string_view text);

std::string read_file(const std::filesystem::path& path);

/// Subdominant ultrametric: the largest ultrametric below the input, i.e. the
/// minimax path distance. Throws DomainError if the input has a remote point.
ExtendedMetricSpace fit_ultrametric(const ExtendedMetricSpace& space);

/// Newick rendering of the filling above height `cut`: leaves are the finite
/// labels, internal nodes sit at merge heights, leaf tips one unit above the
/// highest merge. Children are ordered by their least label. When `cut` is
/// above the lowest merge the result is a forest, one tree per line.
std::string export_dendrogram(const FillingTree& tree, double cut);

struct DendrogramHeights {
    std::vector<std::string> labels;
    std::vector<double> heights;  // full matrix, +inf on the diagonal
};

/// Recovers merge heights from a single-tree export made with the same cut.
DendrogramHeights parse_dendrogram(std::string_view newick, double cut);

}  // namespace ultratree::io
