#pragma once

// Instance files: a sequence of `key: value` entries and `kind [label] { ... }`
// blocks. Values are quoted strings, bare words, lists `[a, b]` and maps
// `{k: v, ...}`. Entries end at `;`, `,` or a newline; `#` starts a comment.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pacf::cli {

struct Node {
    enum class Kind { text, list, map } kind = Kind::text;
    std::string text;                               // text
    std::vector<Node> items;                        // list
    std::vector<std::pair<std::string, Node>> entries;  // map or block
    std::string label;                              // blocks only
    bool block = false;

    bool is_text() const { return kind == Kind::text; }
    bool is_list() const { return kind == Kind::list; }
    bool is_map() const { return kind == Kind::map; }

    const Node* find(const std::string& key) const;
    /// Block of the given kind and label (any label when `label` is empty).
    const Node* block_of(const std::string& kind, const std::string& label = "") const;
    const Node& at(const std::string& key) const;

    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    std::vector<std::string> strings(const std::string& key) const;
    long long integer_or(const std::string& key, long long fallback) const;
    bool flag_or(const std::string& key, bool fallback) const;

    std::vector<std::string> as_strings() const;
};

Node parse_instance(const std::string& text);
Node load_instance(const std::string& path);

}  // namespace pacf::cli
