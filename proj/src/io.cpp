#include "cherry/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <unordered_map>

#include "cherry/algorithms.hpp"
#include "cherry/error.hpp"

namespace cherry {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

struct Pos {
    std::size_t line = 1, column = 1;
};

// Named nodes and edges as read from a file, before any checks.
struct RawGraph {
    std::vector<std::string> name;
    std::vector<Pos> where;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t add(std::string n, Pos p) {
        name.push_back(std::move(n));
        where.push_back(p);
        return name.size() - 1;
    }
};

[[noreturn]] void fail_at(const Pos& p, const std::string& msg) { throw ParseError(p.line, p.column, msg); }

std::string quoted(const std::string& s) { return s.empty() ? "an unnamed node" : "'" + s + "'"; }

// Degree and acyclicity checks with file positions, then conversion.
ParsedNetwork finish(const RawGraph& g, ParseReport report) {
    const std::size_t n = g.name.size();
    if (g.edges.empty()) fail_at(Pos{}, "no edges");
    std::vector<std::vector<std::size_t>> kids(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [u, v] : g.edges) {
        kids[u].push_back(v);
        ++indeg[v];
    }

    std::vector<std::size_t> sources;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) sources.push_back(v);
    if (sources.size() > 1)
        fail_at(g.where[sources[1]], "several sources: " + quoted(g.name[sources[0]]) + " and " +
                                         quoted(g.name[sources[1]]));

    std::vector<std::size_t> pending = indeg, stack = sources;
    std::size_t seen = 0;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        ++seen;
        for (std::size_t c : kids[v])
            if (--pending[c] == 0) stack.push_back(c);
    }
    if (seen != n) {
        for (std::size_t v = 0; v < n; ++v)
            if (pending[v] != 0) fail_at(g.where[v], "node " + quoted(g.name[v]) + " lies on a cycle");
    }

    std::unordered_map<std::string, std::size_t> leaf_names;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t in = indeg[v], out = kids[v].size();
        if (in == 0) continue;
        if (out == 0) {
            if (g.name[v].empty()) fail_at(g.where[v], "leaf without a label");
            if (in != 1) fail_at(g.where[v], "leaf " + quoted(g.name[v]) + " has " + std::to_string(in) + " parents");
            if (!leaf_names.emplace(g.name[v], v).second)
                fail_at(g.where[v], "taxon " + quoted(g.name[v]) + " labels two leaves");
        } else if (in == 1 && out == 1) {
            fail_at(g.where[v], "node " + quoted(g.name[v]) + " has one parent and one child");
        } else if (in >= 2 && out != 1) {
            fail_at(g.where[v], "node " + quoted(g.name[v]) + " has " + std::to_string(in) + " parents and " +
                                    std::to_string(out) + " children");
        }
    }

    ParsedNetwork out;
    out.report = report;
    Network& net = out.net;
    std::vector<NodeId> id(n);
    for (std::size_t v = 0; v < n; ++v) id[v] = kids[v].empty() ? net.add_leaf(g.name[v]) : net.add_node();
    for (auto [u, v] : g.edges) net.add_edge(id[u], id[v]);
    NodeId top = id[sources.front()];
    if (net.outdegree(top) == 1) {
        net.set_root(top);
    } else {
        NodeId root = net.add_node();
        net.add_edge(root, top);
        net.set_root(root);
        out.report.root_inserted = true;
    }
    net.validate();
    return out;
}

bool token_char_ok(char c) {
    if (is_space(c)) return false;
    if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) return false;
    return c != '#' && c != '(' && c != ')' && c != ',' && c != ';';
}

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> split_tokens(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

// Calls f(line_number, content) for each line with its comment stripped.
template <typename F>
void for_each_line(std::string_view text, F f) {
    std::size_t line_no = 1, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        f(line_no, line);
        if (end == text.size()) break;
        start = end + 1;
        ++line_no;
    }
}

void check_token(std::size_t line, const Token& t) {
    for (std::size_t k = 0; k < t.text.size(); ++k)
        if (!token_char_ok(t.text[k]))
            throw ParseError(line, t.column + k, "character not allowed in a name");
}

} // namespace

bool valid_taxon(std::string_view token) {
    return !token.empty() && std::all_of(token.begin(), token.end(), token_char_ok);
}

ParsedNetwork parse_network(std::string_view text) {
    RawGraph g;
    std::unordered_map<std::string, std::size_t> node_of;
    std::map<std::pair<std::size_t, std::size_t>, bool> seen_edge;
    ParseReport report;
    constexpr std::size_t kMaxMultiplicity = 1000;

    auto node = [&](std::size_t line, const Token& t) {
        std::string name(t.text);
        auto it = node_of.find(name);
        if (it != node_of.end()) return it->second;
        std::size_t id = g.add(name, Pos{line, t.column});
        node_of.emplace(std::move(name), id);
        return id;
    };

    for_each_line(text, [&](std::size_t line, std::string_view content) {
        std::vector<Token> tok = split_tokens(content);
        if (tok.empty()) return;
        if (tok.size() < 2) throw ParseError(line, tok[0].column + tok[0].text.size(), "expected a child name");
        if (tok.size() > 3) throw ParseError(line, tok[3].column, "unexpected token after multiplicity");
        check_token(line, tok[0]);
        check_token(line, tok[1]);
        std::size_t mult = 1;
        if (tok.size() == 3) {
            auto [ptr, ec] = std::from_chars(tok[2].text.data(), tok[2].text.data() + tok[2].text.size(), mult);
            if (ec != std::errc() || ptr != tok[2].text.data() + tok[2].text.size() || mult == 0)
                throw ParseError(line, tok[2].column, "multiplicity must be a positive integer");
            if (mult > kMaxMultiplicity) throw ParseError(line, tok[2].column, "multiplicity too large");
        }
        if (tok[0].text == tok[1].text) throw ParseError(line, tok[1].column, "edge from a node to itself");
        std::size_t u = node(line, tok[0]), v = node(line, tok[1]);
        if (!seen_edge.emplace(std::make_pair(u, v), true).second) ++report.merged_edges;
        for (std::size_t k = 0; k < mult; ++k) g.edges.emplace_back(u, v);
    });
    return finish(g, report);
}

namespace {

class NewickReader {
public:
    explicit NewickReader(std::string_view text) : text_(text) {
        line_starts_.push_back(0);
        for (std::size_t k = 0; k < text.size(); ++k)
            if (text[k] == '\n') line_starts_.push_back(k + 1);
    }

    ParsedNetwork run() {
        skip_space();
        if (at_end()) fail("empty input");
        std::size_t top = subtree(0);
        skip_space();
        if (at_end() || text_[i_] != ';') fail("expected ';'");
        ++i_;
        skip_space();
        if (!at_end()) fail("text after ';'");
        merge_hybrids();
        if (g_.edges.empty()) {
            // A lone leaf: hang it below a root.
            std::size_t root = g_.add("", g_.where[top]);
            g_.edges.emplace_back(root, top);
        }
        return finish(g_, ParseReport{});
    }

private:
    static constexpr std::size_t kMaxDepth = 10000;

    struct Hybrid {
        std::vector<std::size_t> occurrences;
        std::size_t defining = SIZE_MAX;
    };

    std::string_view text_;
    std::size_t i_ = 0;
    RawGraph g_;
    std::vector<bool> has_children_;
    std::map<std::string, Hybrid> hybrids_;
    std::vector<std::string> hybrid_of_;
    std::vector<std::size_t> line_starts_;

    bool at_end() const { return i_ >= text_.size(); }
    Pos here() const {
        auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), i_);
        std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
        return Pos{line, i_ - line_starts_[line - 1] + 1};
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(here(), msg); }
    void skip_space() {
        while (!at_end() && is_space(text_[i_])) ++i_;
    }

    std::size_t new_node(Pos p) {
        has_children_.push_back(false);
        hybrid_of_.emplace_back();
        return g_.add("", p);
    }

    std::size_t subtree(std::size_t depth) {
        if (depth > kMaxDepth) fail("nesting too deep");
        skip_space();
        std::size_t v = new_node(here());
        if (!at_end() && text_[i_] == '(') {
            ++i_;
            has_children_[v] = true;
            for (;;) {
                std::size_t c = subtree(depth + 1);
                g_.edges.emplace_back(v, c);
                skip_space();
                if (at_end()) fail("unclosed '('");
                if (text_[i_] == ',') {
                    ++i_;
                    continue;
                }
                if (text_[i_] == ')') {
                    ++i_;
                    break;
                }
                fail("expected ',' or ')'");
            }
        }
        label(v);
        return v;
    }

    void label(std::size_t v) {
        skip_space();
        std::size_t start = i_;
        while (!at_end() && token_char_ok(text_[i_]) && text_[i_] != ':') ++i_;
        g_.name[v] = std::string(text_.substr(start, i_ - start));
        if (!at_end() && text_[i_] == '#') {
            ++i_;
            std::size_t tag_start = i_;
            while (!at_end() && text_[i_] >= 'A' && text_[i_] <= 'Z') ++i_;
            std::string_view type = text_.substr(tag_start, i_ - tag_start);
            if (type != "H" && type != "LGT" && type != "R") fail("expected H, LGT or R after '#'");
            std::size_t num_start = i_;
            while (!at_end() && text_[i_] >= '0' && text_[i_] <= '9') ++i_;
            if (i_ == num_start) fail("expected a number in the hybrid tag");
            std::string key(text_.substr(tag_start, i_ - tag_start));
            hybrid_of_[v] = key;
            Hybrid& h = hybrids_[key];
            h.occurrences.push_back(v);
            if (has_children_[v]) {
                if (h.defining != SIZE_MAX) fail("hybrid #" + key + " has children in two places");
                h.defining = v;
            }
        }
        skip_space();
        while (!at_end() && text_[i_] == ':') {
            ++i_;
            skip_space();
            std::size_t num_start = i_;
            while (!at_end() && (std::isdigit(static_cast<unsigned char>(text_[i_])) || text_[i_] == '.' ||
                                 text_[i_] == 'e' || text_[i_] == 'E' || text_[i_] == '-' || text_[i_] == '+'))
                ++i_;
            if (i_ == num_start && (at_end() || text_[i_] != ':')) fail("expected a number after ':'");
            skip_space();
        }
        if (!has_children_[v] && g_.name[v].empty() && hybrid_of_[v].empty()) fail("leaf without a label");
    }

    // Occurrences of one hybrid tag become a single node.
    void merge_hybrids() {
        std::vector<std::size_t> target(g_.name.size());
        for (std::size_t v = 0; v < target.size(); ++v) target[v] = v;
        for (auto& [key, h] : hybrids_) {
            Pos first = g_.where[h.occurrences.front()];
            if (h.occurrences.size() < 2) fail_at(first, "hybrid #" + key + " occurs only once");
            std::string name;
            for (std::size_t o : h.occurrences) {
                if (g_.name[o].empty()) continue;
                if (!name.empty() && name != g_.name[o]) fail_at(g_.where[o], "hybrid #" + key + " has two labels");
                name = g_.name[o];
            }
            std::size_t keep = h.defining != SIZE_MAX ? h.defining : h.occurrences.front();
            for (std::size_t o : h.occurrences) target[o] = keep;
            if (h.defining == SIZE_MAX) {
                if (name.empty()) fail_at(first, "hybrid #" + key + " has neither children nor a label");
                // A labeled hybrid leaf becomes a reticulation above that leaf.
                std::size_t leaf = g_.add(name, first);
                target.push_back(leaf);
                g_.name[keep].clear();
                g_.edges.emplace_back(keep, leaf);
            } else {
                g_.name[keep].clear();
            }
        }
        for (auto& [u, v] : g_.edges) {
            u = target[u];
            v = target[v];
        }
        // Drop the now unused duplicate occurrences by renumbering.
        std::vector<bool> used(g_.name.size(), false);
        for (auto [u, v] : g_.edges) used[u] = used[v] = true;
        if (g_.edges.empty()) return;
        RawGraph packed;
        std::vector<std::size_t> id(g_.name.size(), SIZE_MAX);
        for (std::size_t v = 0; v < g_.name.size(); ++v)
            if (used[v]) id[v] = packed.add(g_.name[v], g_.where[v]);
        for (auto [u, v] : g_.edges) {
            if (u == v) fail_at(g_.where[u], "hybrid refers to itself");
            packed.edges.emplace_back(id[u], id[v]);
        }
        g_ = std::move(packed);
    }
};

} // namespace

ParsedNetwork parse_enewick(std::string_view text) { return NewickReader(text).run(); }

ParsedNetwork parse_any_network(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && is_space(text[i])) ++i;
    if ((i < text.size() && text[i] == '(') || text.find(';') != std::string_view::npos) return parse_enewick(text);
    return parse_network(text);
}

namespace {

// Leaves by taxon, then the rest by NodeId, each distinct child once.
std::vector<NodeId> ordered_children(const Network& net, NodeId u) {
    std::vector<NodeId> kids(net.children(u).begin(), net.children(u).end());
    std::sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) {
        bool la = net.labeled(a), lb = net.labeled(b);
        if (la != lb) return la;
        if (la) return natural_less(net.label(a), net.label(b));
        return a < b;
    });
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    return kids;
}

std::string write_edge_list(const Network& net) {
    std::string prefix = "v";
    std::vector<Taxon> taxa = net.taxa();
    auto clashes = [&] {
        return std::any_of(taxa.begin(), taxa.end(), [&](const Taxon& t) { return t.rfind(prefix, 0) == 0; });
    };
    while (clashes()) prefix = "_" + prefix;

    std::vector<NodeId> order{net.root()};
    for (NodeId v : net.nodes())
        if (v != net.root() && !net.labeled(v)) order.push_back(v);
    std::unordered_map<NodeId, std::string> name;
    for (std::size_t i = 0; i < order.size(); ++i) name[order[i]] = prefix + std::to_string(i);
    auto name_of = [&](NodeId v) { return net.labeled(v) ? net.label(v) : name.at(v); };

    std::string out;
    for (NodeId u : order)
        for (NodeId c : ordered_children(net, u)) {
            out += name_of(u) + " " + name_of(c);
            std::size_t m = net.multiplicity(u, c);
            if (m > 1) out += " " + std::to_string(m);
            out += "\n";
        }
    return out;
}

void write_newick_node(const Network& net, NodeId v, std::unordered_map<NodeId, std::size_t>& tag, std::string& out) {
    if (net.labeled(v)) {
        out += net.label(v);
        return;
    }
    bool hybrid = net.kind(v) == NodeKind::Reticulation;
    if (hybrid) {
        auto it = tag.find(v);
        if (it != tag.end()) {
            out += "#H" + std::to_string(it->second);
            return;
        }
        std::size_t k = tag.size() + 1;
        tag.emplace(v, k);
    }
    out += "(";
    bool first = true;
    for (NodeId c : ordered_children(net, v))
        for (std::size_t m = net.multiplicity(v, c); m > 0; --m) {
            if (!first) out += ",";
            first = false;
            write_newick_node(net, c, tag, out);
        }
    out += ")";
    if (hybrid) out += "#H" + std::to_string(tag.at(v));
}

} // namespace

std::string write_network(const Network& net, NetworkFormat format) {
    if (format == NetworkFormat::EdgeList) return write_edge_list(net);
    std::unordered_map<NodeId, std::size_t> tag;
    std::string out;
    write_newick_node(net, net.root(), tag, out);
    return out + ";\n";
}

Sequence parse_cps(std::string_view text) {
    Sequence s;
    for_each_line(text, [&](std::size_t line, std::string_view content) {
        std::vector<Token> tok;
        std::size_t comma = content.find(',');
        if (comma != std::string_view::npos) {
            std::vector<Token> left = split_tokens(content.substr(0, comma));
            std::vector<Token> right = split_tokens(content.substr(comma + 1));
            for (Token& t : right) t.column += comma + 1;
            if (left.size() != 1 || right.size() != 1)
                throw ParseError(line, comma + 1, "expected exactly one taxon on each side of ','");
            tok = {left[0], right[0]};
        } else {
            tok = split_tokens(content);
            if (tok.empty()) return;
            if (tok.size() != 2)
                throw ParseError(line, tok.size() > 2 ? tok[2].column : 1, "expected two taxa per line");
        }
        check_token(line, tok[0]);
        check_token(line, tok[1]);
        if (tok[0].text == tok[1].text) throw ParseError(line, tok[1].column, "a pair needs two distinct taxa");
        s.push_back(Pair(std::string(tok[0].text), std::string(tok[1].text)));
    });
    return s;
}

std::string write_cps(const Sequence& s) {
    std::string out;
    for (const Pair& p : s) out += p.first + " " + p.second + "\n";
    return out;
}

} // namespace cherry
