#include "instance.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "pacf/error.hpp"

namespace pacf::cli {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Node document() {
        Node n;
        n.kind = Node::Kind::map;
        entries(n, '\0');
        return n;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;

    [[noreturn]] void error(const std::string& what) const {
        fail("instance line " + std::to_string(line_) + ": " + what);
    }

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[pos_]; }
    char get() {
        char c = s_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    void skip_comment() {
        while (!eof() && peek() != '\n') get();
    }

    void skip_blank(bool newlines) {
        while (!eof()) {
            char c = peek();
            if (c == '#') skip_comment();
            else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) get();
            else break;
        }
    }

    void skip_separators() {
        while (!eof()) {
            char c = peek();
            if (c == '#') skip_comment();
            else if (std::isspace(static_cast<unsigned char>(c)) || c == ';' || c == ',') get();
            else break;
        }
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    }

    std::string quoted() {
        get();
        std::string out;
        while (true) {
            if (eof()) error("unterminated string");
            char c = get();
            if (c == '"') return out;
            if (c == '\\') {
                if (eof()) error("unterminated string");
                char e = get();
                out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
            } else {
                out += c;
            }
        }
    }

    std::string key() {
        if (peek() == '"') return quoted();
        std::string out;
        while (!eof() && ident_char(peek())) out += get();
        if (out.empty()) error(std::string("unexpected '") + peek() + "'");
        return out;
    }

    void entries(Node& into, char close) {
        while (true) {
            skip_separators();
            if (eof()) {
                if (close) error(std::string("missing '") + close + "'");
                return;
            }
            if (peek() == close) {
                get();
                return;
            }
            std::string k = key();
            skip_blank(false);
            if (peek() == ':') {
                get();
                skip_blank(true);
                into.entries.emplace_back(k, value());
                continue;
            }
            Node b;
            b.kind = Node::Kind::map;
            b.block = true;
            if (peek() != '{') {
                b.label = key();
                skip_blank(true);
            }
            if (peek() != '{') error("expected ':' or '{' after '" + k + "'");
            get();
            entries(b, '}');
            into.entries.emplace_back(k, std::move(b));
        }
    }

    Node value() {
        Node n;
        char c = peek();
        if (c == '"') {
            n.text = quoted();
        } else if (c == '[') {
            get();
            n.kind = Node::Kind::list;
            while (true) {
                skip_separators();
                if (eof()) error("missing ']'");
                if (peek() == ']') {
                    get();
                    break;
                }
                n.items.push_back(value());
            }
        } else if (c == '{') {
            get();
            n.kind = Node::Kind::map;
            entries(n, '}');
        } else {
            int depth = 0;
            while (!eof()) {
                char d = peek();
                if (depth == 0 && (d == ',' || d == ';' || d == ']' || d == '}' || d == '\n' || d == '#')) break;
                if (d == '(') ++depth;
                if (d == ')') --depth;
                n.text += get();
            }
            while (!n.text.empty() && std::isspace(static_cast<unsigned char>(n.text.back()))) n.text.pop_back();
            if (n.text.empty()) error("missing value");
        }
        return n;
    }
};

}  // namespace

const Node* Node::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key && !v.block) return &v;
    return nullptr;
}

const Node* Node::block_of(const std::string& kind, const std::string& label) const {
    for (const auto& [k, v] : entries)
        if (k == kind && v.block && (label.empty() || v.label == label)) return &v;
    return nullptr;
}

const Node& Node::at(const std::string& key) const {
    const Node* n = find(key);
    if (!n) fail("missing entry '" + key + "'");
    return *n;
}

std::string Node::str(const std::string& key) const {
    const Node& n = at(key);
    if (!n.is_text()) fail("entry '" + key + "' must be a single value");
    return n.text;
}

std::string Node::str_or(const std::string& key, const std::string& fallback) const {
    return find(key) ? str(key) : fallback;
}

std::vector<std::string> Node::as_strings() const {
    if (is_text()) return {text};
    if (!is_list()) fail("expected a list of values");
    std::vector<std::string> out;
    for (const auto& i : items) {
        if (!i.is_text()) fail("expected a list of values");
        out.push_back(i.text);
    }
    return out;
}

std::vector<std::string> Node::strings(const std::string& key) const {
    const Node* n = find(key);
    return n ? n->as_strings() : std::vector<std::string>{};
}

long long Node::integer_or(const std::string& key, long long fallback) const {
    if (!find(key)) return fallback;
    const std::string s = str(key);
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail("entry '" + key + "' must be an integer");
}

bool Node::flag_or(const std::string& key, bool fallback) const {
    if (!find(key)) return fallback;
    const std::string s = str(key);
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    fail("entry '" + key + "' must be true or false");
}

Node parse_instance(const std::string& text) { return Parser(text).document(); }

Node load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open instance file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_instance(os.str());
}

}  // namespace pacf::cli
