#include "ultratree/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ultratree/errors.hpp"
#include "ultratree/kernels.hpp"

namespace ultratree::io {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double entry_value(const json& e) {
    if (e.is_number()) return e.get<double>();
    if (e.is_string()) {
        const auto s = e.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
        if (s == "-inf" || s == "-Infinity") return -kInf;
    }
    throw ParseError("matrix entry must be a number, \"inf\" or \"-inf\": " + e.dump());
}

json entry_json(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

std::string format_real(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("not a real number: '" + std::string(s) + "'");
    return v;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("syntax error: ") + e.what());
    }
}

}  // namespace

ExtendedMetricSpace parse_space(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("space document must be a JSON object");
    try {
        const int version = doc.value("format_version", kFormatVersion);
        if (version != kFormatVersion) throw ParseError("unsupported format_version " + std::to_string(version));
        const auto labels = doc.at("points").get<std::vector<std::string>>();
        const std::size_t n = labels.size();
        if (n < 3) throw AxiomViolation("cardinality", "a space needs at least 3 points, got " + std::to_string(n));

        std::optional<std::size_t> omega;
        if (doc.contains("omega") && !doc.at("omega").is_null()) {
            const auto w = doc.at("omega").get<std::string>();
            auto it = std::find(labels.begin(), labels.end(), w);
            if (it == labels.end()) throw AxiomViolation("remote-point", "omega '" + w + "' is not a point");
            omega = static_cast<std::size_t>(it - labels.begin());
        }

        const std::string enc = doc.value("encoding", std::string("distances"));
        Encoding encoding;
        if (enc == "distances") encoding = Encoding::distances;
        else if (enc == "heights") encoding = Encoding::heights;
        else throw ParseError("unknown encoding '" + enc + "'");
        const double diagonal = encoding == Encoding::distances ? 0.0 : kInf;

        const json& mj = doc.at("matrix");
        if (!mj.is_array()) throw ParseError("matrix must be an array");
        std::vector<double> full(n * n, diagonal);
        if (!mj.empty() && mj.front().is_array()) {
            if (mj.size() != n) throw ParseError("full matrix needs " + std::to_string(n) + " rows");
            for (std::size_t i = 0; i < n; ++i) {
                if (!mj[i].is_array() || mj[i].size() != n)
                    throw ParseError("row " + std::to_string(i) + " needs " + std::to_string(n) + " entries");
                for (std::size_t j = 0; j < n; ++j) full[i * n + j] = entry_value(mj[i][j]);
            }
        } else {
            if (mj.size() != n * (n - 1) / 2)
                throw ParseError("upper-triangular matrix needs " + std::to_string(n * (n - 1) / 2) + " entries, got " +
                                 std::to_string(mj.size()));
            std::size_t k = 0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j, ++k) {
                    full[i * n + j] = full[j * n + i] = entry_value(mj[k]);
                }
            }
        }
        if (encoding == Encoding::heights) {
            // The heights constructor checks structure but not symmetry.
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (full[i * n + j] != full[j * n + i])
                        throw AxiomViolation("symmetry", "h(" + labels[i] + ", " + labels[j] + ") != h(" + labels[j] +
                                                             ", " + labels[i] + ")");
                }
            }
            return ExtendedMetricSpace::from_heights(labels, omega, std::move(full));
        }
        return ExtendedMetricSpace::from_distances(labels, omega, std::move(full));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed space document: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExtendedMetricSpace load_space(const std::filesystem::path& path) { return parse_space(read_file(path)); }

json space_to_json(const ExtendedMetricSpace& space, Encoding encoding) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["points"] = space.labels();
    doc["omega"] = space.omega() ? json(space.label(*space.omega())) : json(nullptr);
    doc["encoding"] = encoding == Encoding::distances ? "distances" : "heights";
    json m = json::array();
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const PointId p{i}, q{j};
            const double v = encoding == Encoding::distances ? space.raw_dist(p, q) : space.height_row(p)[j];
            m.push_back(entry_json(v));
        }
    }
    doc["matrix"] = std::move(m);
    return doc;
}

std::string serialize_space(const ExtendedMetricSpace& space, Encoding encoding) {
    return space_to_json(space, encoding).dump(2) + "\n";
}

TreePoint parse_tree_point(const FillingTree& tree, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '{') {
        const json doc = parse_json(text);
        try {
            return tree.point(doc.at("anchor").get<std::string>(), doc.at("t").get<double>());
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed tree point: ") + e.what());
        }
    }
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("tree point must be 'label:t' or a JSON object");
    return tree.point(std::string(text.substr(0, colon)), parse_real(text.substr(colon + 1)));
}

json tree_point_to_json(const FillingTree& tree, const TreePoint& p) {
    tree.check(p);
    return json{{"anchor", tree.base().label(p.anchor)}, {"t", p.t}};
}

std::vector<TreePoint> parse_tree_points(const FillingTree& tree, std::string_view text) {
    std::vector<TreePoint> out;
    const auto body = trim(text);
    if (!body.empty() && (body.front() == '[' || body.front() == '{')) {
        const json doc = parse_json(body);
        auto one = [&](const json& j) {
            try {
                out.push_back(tree.point(j.at("anchor").get<std::string>(), j.at("t").get<double>()));
            } catch (const json::exception& e) {
                throw ParseError(std::string("malformed tree point: ") + e.what());
            }
        };
        if (doc.is_array()) {
            for (const auto& j : doc) one(j);
        } else {
            one(doc);
        }
        return out;
    }
    std::istringstream in{std::string(body)};
    std::string line;
    while (std::getline(in, line)) {
        auto l = trim(line);
        if (l.empty() || l.front() == '#') continue;
        std::istringstream fields{std::string(l)};
        std::string label, t;
        if (!(fields >> label >> t)) throw ParseError("point line must be 'label t': '" + std::string(l) + "'");
        out.push_back(tree.point(label, parse_real(t)));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_label_pairs(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto l = trim(line);
        if (l.empty() || l.front() == '#') continue;
        std::istringstream fields{std::string(l)};
        std::string from, to, extra;
        if (!(fields >> from >> to) || (fields >> extra))
            throw ParseError("map line must be 'source target': '" + std::string(l) + "'");
        out.emplace_back(from, to);
    }
    return out;
}

ExtendedMetricSpace fit_ultrametric(const ExtendedMetricSpace& space) {
    if (space.has_remote_point()) throw DomainError("fit_ultrametric expects a space without remote point");
    const std::size_t n = space.size();
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = space.raw_dist(PointId{i}, PointId{j});
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::span<const double> row_k{d.data() + k * n, n};
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            kernels::minimax_relax({d.data() + i * n, n}, row_k, d[i * n + k]);
        }
    }
    return ExtendedMetricSpace::from_distances(space.labels(), std::nullopt, std::move(d));
}

namespace {

std::string newick_label(const std::string& label) {
    if (label.find_first_of("()[]':;, \t\n") == std::string::npos) return label;
    std::string quoted = "'";
    for (char ch : label) {
        if (ch == '\'') quoted += '\'';
        quoted += ch;
    }
    return quoted + "'";
}

struct DendrogramWriter {
    const FillingTree& tree;
    double tip;
    double slack;

    double h(PointId a, PointId b) const { return tree.height(a, b); }
    const std::string& label(PointId p) const { return tree.base().label(p); }

    double merge_height(const std::vector<PointId>& s) const {
        double lo = kInf;
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) lo = std::min(lo, h(s[i], s[j]));
        }
        return lo;
    }

    // Classes of "merge strictly above `level`"; an equivalence for ultrametrics.
    std::vector<std::vector<PointId>> split(const std::vector<PointId>& s, double level, bool inclusive) const {
        std::vector<std::vector<PointId>> groups;
        for (PointId p : s) {
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
                const double v = h(g.front(), p);
                return inclusive ? v >= level - slack : v > level + slack;
            });
            if (it == groups.end()) groups.push_back({p});
            else it->push_back(p);
        }
        auto least = [&](const std::vector<PointId>& g) {
            return std::min_element(g.begin(), g.end(),
                                    [&](PointId a, PointId b) { return label(a) < label(b); });
        };
        std::sort(groups.begin(), groups.end(),
                  [&](const auto& a, const auto& b) { return label(*least(a)) < label(*least(b)); });
        return groups;
    }

    double node_height(const std::vector<PointId>& s) const { return s.size() == 1 ? tip : merge_height(s); }

    std::string render(const std::vector<PointId>& s) const {
        if (s.size() == 1) return newick_label(label(s.front()));
        const double here = merge_height(s);
        std::string out = "(";
        bool first = true;
        for (const auto& child : split(s, here, false)) {
            if (!first) out += ',';
            first = false;
            out += render(child) + ':' + format_real(node_height(child) - here);
        }
        return out + ')';
    }
};

struct NewickNode {
    std::string label;
    double length = 0.0;
    std::vector<NewickNode> children;
};

class NewickReader {
public:
    explicit NewickReader(std::string_view s) : s_(s) {}

    NewickNode read() {
        NewickNode root = node();
        skip_ws();
        if (peek() != ';') throw ParseError("newick: expected ';'");
        ++pos_;
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("newick: expected a single tree");
        return root;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string label() {
        skip_ws();
        std::string out;
        if (peek() == '\'') {
            ++pos_;
            while (true) {
                if (pos_ >= s_.size()) throw ParseError("newick: unterminated quoted label");
                char ch = s_[pos_++];
                if (ch == '\'') {
                    if (peek() == '\'') {
                        out += '\'';
                        ++pos_;
                        continue;
                    }
                    break;
                }
                out += ch;
            }
            return out;
        }
        while (pos_ < s_.size() && std::string_view("(),:;").find(s_[pos_]) == std::string_view::npos &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])))
            out += s_[pos_++];
        return out;
    }

    NewickNode node() {
        NewickNode n;
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            while (true) {
                n.children.push_back(node());
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                if (peek() == ')') {
                    ++pos_;
                    break;
                }
                throw ParseError("newick: expected ',' or ')'");
            }
        }
        n.label = label();
        skip_ws();
        if (peek() == ':') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::string_view("(),:;").find(s_[pos_]) == std::string_view::npos &&
                   !std::isspace(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            n.length = parse_real(s_.substr(start, pos_ - start));
        }
        if (n.children.empty() && n.label.empty()) throw ParseError("newick: leaf without label");
        return n;
    }
};

void collect(const NewickNode& n, double parent_height, DendrogramHeights& out,
             std::vector<std::vector<std::size_t>>& leaf_sets_out) {
    const double here = parent_height + n.length;
    if (n.children.empty()) {
        out.labels.push_back(n.label);
        leaf_sets_out.push_back({out.labels.size() - 1});
        return;
    }
    std::vector<std::vector<std::size_t>> kids;
    for (const auto& c : n.children) {
        std::vector<std::vector<std::size_t>> sub;
        collect(c, here, out, sub);
        std::vector<std::size_t> merged;
        for (auto& s : sub) merged.insert(merged.end(), s.begin(), s.end());
        kids.push_back(std::move(merged));
    }
    // Record h for leaves in different children; matrix is sized later.
    for (std::size_t a = 0; a < kids.size(); ++a) {
        for (std::size_t b = a + 1; b < kids.size(); ++b) {
            for (std::size_t x : kids[a]) {
                for (std::size_t y : kids[b]) {
                    out.heights.push_back(static_cast<double>(x));
                    out.heights.push_back(static_cast<double>(y));
                    out.heights.push_back(here);
                }
            }
        }
    }
    std::vector<std::size_t> all;
    for (auto& k : kids) all.insert(all.end(), k.begin(), k.end());
    leaf_sets_out.push_back(std::move(all));
}

}  // namespace

std::string export_dendrogram(const FillingTree& tree, double cut) {
    if (!std::isfinite(cut)) throw DomainError("dendrogram cut must be finite");
    const auto anchors = tree.anchors();
    if (anchors.size() < 2) throw DomainError("a dendrogram needs a nonelementary filling");
    double top = -kInf;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        for (std::size_t j = i + 1; j < anchors.size(); ++j) top = std::max(top, tree.height(anchors[i], anchors[j]));
    }
    DendrogramWriter w{tree, std::max(top, cut) + 1.0, tree.tolerance().log_slack(top, cut)};
    std::vector<PointId> all(anchors.begin(), anchors.end());
    std::string out;
    for (const auto& comp : w.split(all, cut, true)) {
        if (!out.empty()) out += '\n';
        out += w.render(comp) + ':' + format_real(w.node_height(comp) - cut) + ';';
    }
    return out;
}

DendrogramHeights parse_dendrogram(std::string_view newick, double cut) {
    NewickNode root = NewickReader(newick).read();
    DendrogramHeights out;
    std::vector<std::vector<std::size_t>> sets;
    collect(root, cut, out, sets);
    const std::vector<double> triples = std::move(out.heights);
    const std::size_t n = out.labels.size();
    out.heights.assign(n * n, kInf);
    for (std::size_t k = 0; k + 2 < triples.size(); k += 3) {
        const auto x = static_cast<std::size_t>(triples[k]);
        const auto y = static_cast<std::size_t>(triples[k + 1]);
        out.heights[x * n + y] = out.heights[y * n + x] = triples[k + 2];
    }
    return out;
}

}  // namespace ultratree::io
