/* tree_io.hpp -- S-expression syntax and DOT emission for trees.
 *
 * Grammar:  tree  := "(edge NAME)" | node
 *           node  := "(node OUT-EDGE child ...)"
 *           child := "(edge NAME)" | node
 * The root edge is written outermost.
 */

#ifndef DENDRO_TREE_IO_HPP_
#define DENDRO_TREE_IO_HPP_

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line(line),
          column(column) {}
    std::size_t line, column;
};

namespace detail {
class SexpLexer {
public:
    explicit SexpLexer(const std::string& text) : text_(text) {}

    std::string next() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(' || c == ')') {
            advance();
            return std::string(1, c);
        }
        std::string tok;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')') {
            tok += text_[pos_];
            advance();
        }
        return tok;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    const std::string& text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// returns the root/output edge of the parsed subexpression
inline Edge parse_sexp(SexpLexer& lex, std::vector<TreeVertex>& vertices) {
    if (lex.next() != "(") lex.fail("expected '('");
    std::string head = lex.next();
    if (head == "edge") {
        Edge name = lex.next();
        if (name == "(" || name == ")" || name.empty()) lex.fail("expected edge name");
        if (lex.next() != ")") lex.fail("expected ')'");
        return name;
    }
    if (head != "node") lex.fail("expected 'edge' or 'node', got '" + head + "'");
    Edge out = lex.next();
    if (out == "(" || out == ")" || out.empty()) lex.fail("expected output edge name");
    TreeVertex v;
    v.output = out;
    // children: peek via manual scan
    std::vector<Edge> children;
    for (;;) {
        // lookahead by copy
        SexpLexer probe = lex;
        std::string tok = probe.next();
        if (tok == ")") {
            lex.next();
            break;
        }
        children.push_back(parse_sexp(lex, vertices));
    }
    v.inputs = children;
    vertices.push_back(std::move(v));
    return out;
}
}  // namespace detail

inline Tree parse_tree(const std::string& text) {
    detail::SexpLexer lex(text);
    std::vector<TreeVertex> vertices;
    Edge root = detail::parse_sexp(lex, vertices);
    if (!lex.at_end()) lex.fail("trailing input after tree");
    return Tree(root, std::move(vertices));
}

namespace detail {
inline void print_sexp(const Tree& t, const Edge& e, std::ostream& os) {
    const TreeVertex* v = t.vertex_above(e);
    if (!v) {
        os << "(edge " << e << ")";
        return;
    }
    os << "(node " << e;
    for (const auto& in : v->inputs) {
        os << " ";
        print_sexp(t, in, os);
    }
    os << ")";
}
}  // namespace detail

inline std::string to_sexp(const Tree& t) {
    std::ostringstream os;
    detail::print_sexp(t, t.root(), os);
    return os.str();
}

// DOT output: vertices as graph nodes, edges as graph edges; leaves and the
// root end are drawn as points.
inline std::string to_dot(const Tree& t) {
    std::ostringstream os;
    os << "digraph tree {\n  rankdir=BT;\n  node [shape=circle, label=\"\", width=0.15];\n";
    std::map<Edge, std::string> upper_node;  // node at the top end of each edge
    std::size_t next_tip = 0;
    for (const auto& e : t.edges()) {
        if (const TreeVertex* v = t.vertex_above(e)) {
            upper_node[e] = "v_" + v->output;
        } else {
            std::string tip = "tip_" + std::to_string(next_tip++);
            os << "  " << tip << " [shape=point, style=invis];\n";
            upper_node[e] = tip;
        }
    }
    os << "  root_end [shape=point, style=invis];\n";
    for (const auto& v : t.vertices()) os << "  v_" << v.output << " [shape=circle];\n";
    for (const auto& e : t.edges()) {
        std::string lower =
            t.vertex_below(e) ? "v_" + t.vertex_below(e)->output : std::string("root_end");
        os << "  " << lower << " -> " << upper_node.at(e) << " [label=\"" << e
           << "\", dir=none];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace dendro

#endif  // DENDRO_TREE_IO_HPP_
