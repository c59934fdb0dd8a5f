#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "formula.hpp"

namespace ltlfo {

/// A node of a message tree: either an element with ordered children or a
/// text leaf.
class Node {
public:
  static Node element(std::string name, std::vector<Node> children = {}) {
    if (name.empty())
      throw error("element name must not be empty");
    return Node(false, std::move(name), std::move(children));
  }
  static Node text(std::string value) { return Node(true, std::move(value), {}); }

  bool is_text() const noexcept { return leaf_; }
  /// Element name, or the text of a leaf.
  const std::string& name() const noexcept { return value_; }
  const std::string& value() const noexcept { return value_; }
  const std::vector<Node>& children() const noexcept { return children_; }

  /// The text of an element whose only child is a text leaf.
  std::optional<std::string> text_content() const {
    if (!leaf_ && children_.size() == 1 && children_.front().leaf_)
      return children_.front().value_;
    return std::nullopt;
  }

  friend bool operator==(const Node&, const Node&) = default;

private:
  Node(bool leaf, std::string value, std::vector<Node> children)
      : leaf_(leaf), value_(std::move(value)), children_(std::move(children)) {}

  bool leaf_;
  std::string value_;
  std::vector<Node> children_;
};

/// One event of a trace. The root is always an element.
class Message {
public:
  explicit Message(Node root) : root_(std::move(root)) {
    if (root_.is_text())
      throw error("message root must be an element");
  }

  const Node& root() const noexcept { return root_; }

  friend bool operator==(const Message&, const Message&) = default;

private:
  Node root_;
};

using Trace = std::vector<Message>;

/// The infinite trace prefix . loop . loop . ...
class LassoTrace {
public:
  LassoTrace(std::vector<Message> prefix, std::vector<Message> loop)
      : prefix_(std::move(prefix)), loop_(std::move(loop)) {
    if (loop_.empty())
      throw empty_loop();
  }

  const std::vector<Message>& prefix() const noexcept { return prefix_; }
  const std::vector<Message>& loop() const noexcept { return loop_; }

  /// Number of distinct positions: prefix length plus loop length.
  std::size_t period_end() const noexcept { return prefix_.size() + loop_.size(); }

  /// Canonical position in [0, prefix + loop) denoting the same message as i.
  std::size_t canonical(std::size_t i) const noexcept {
    const std::size_t k = prefix_.size();
    return i < k ? i : k + (i - k) % loop_.size();
  }

  /// Canonical successor of a canonical position.
  std::size_t successor(std::size_t i) const noexcept { return i + 1 < period_end() ? i + 1 : prefix_.size(); }

private:
  std::vector<Message> prefix_;
  std::vector<Message> loop_;
};

inline const Message& position_message(const LassoTrace& t, std::size_t i) {
  const std::size_t k = t.prefix().size();
  return i < k ? t.prefix()[i] : t.loop()[(i - k) % t.loop().size()];
}

namespace detail {

inline void collect(const Node& node, const std::vector<std::string>& segs, std::size_t depth,
                    std::set<std::string>& out) {
  if (depth + 1 == segs.size()) {
    if (auto text = node.text_content())
      out.insert(*text);
    return;
  }
  for (const Node& child : node.children())
    if (!child.is_text() && child.name() == segs[depth + 1])
      collect(child, segs, depth + 1, out);
}

} // namespace detail

/// Values found at the end of `path` in `m`. Only elements whose sole child
/// is a text leaf contribute.
inline std::set<std::string> dom(const Message& m, const Path& path) {
  std::set<std::string> out;
  const auto& segs = path.segments();
  if (segs.empty() || m.root().name() != segs.front())
    return out;
  detail::collect(m.root(), segs, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// JSON encoding

using json = nlohmann::ordered_json;

namespace detail {

inline void append_children(const std::string& name, const json& value, std::vector<Node>& out, std::size_t line);

inline Node node_from_json(const std::string& name, const json& value, std::size_t line) {
  if (value.is_string())
    return Node::element(name, {Node::text(value.get<std::string>())});
  if (value.is_object()) {
    std::vector<Node> children;
    for (const auto& [key, child] : value.items()) {
      if (key.empty())
        throw malformed_input(line, "empty element name");
      append_children(key, child, children, line);
    }
    return Node::element(name, std::move(children));
  }
  throw malformed_input(line, "element '" + name + "' must hold a string or an object");
}

inline void append_children(const std::string& name, const json& value, std::vector<Node>& out, std::size_t line) {
  if (value.is_array()) {
    for (const auto& item : value) {
      if (item.is_array())
        throw malformed_input(line, "nested arrays are not allowed under '" + name + "'");
      out.push_back(node_from_json(name, item, line));
    }
    return;
  }
  out.push_back(node_from_json(name, value, line));
}

inline json node_to_json(const Node& node) {
  if (auto text = node.text_content())
    return *text;
  json obj = json::object();
  // Same-named children are grouped into an array at the first occurrence.
  std::vector<std::string> order;
  for (const Node& child : node.children()) {
    if (child.is_text())
      throw error("element '" + node.name() + "' mixes text with other children");
    if (!obj.contains(child.name())) {
      order.push_back(child.name());
      obj[child.name()] = json::array();
    }
    obj[child.name()].push_back(node_to_json(child));
  }
  for (const auto& key : order)
    if (obj[key].size() == 1) {
      json single = obj[key][0];
      obj[key] = single;
    }
  return obj;
}

} // namespace detail

/// Decodes `{"root": ...}`: strings become text elements, objects become
/// children in key order and arrays become repeated same-named children.
inline Message message_from_json(const json& value, std::size_t line = 1) {
  if (!value.is_object() || value.size() != 1)
    throw malformed_input(line, "a message must be an object with exactly one key");
  const auto& [name, body] = *value.items().begin();
  if (name.empty())
    throw malformed_input(line, "empty root element name");
  return Message(detail::node_from_json(name, body, line));
}

inline json message_to_json(const Message& m) {
  json out = json::object();
  out[m.root().name()] = detail::node_to_json(m.root());
  return out;
}

inline Message parse_message(std::string_view text, std::size_t line = 1) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error& e) {
    throw malformed_input(line, e.what());
  }
  return message_from_json(value, line);
}

inline std::string serialize(const Message& m) { return message_to_json(m).dump(); }

namespace detail {

inline bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

} // namespace detail

/// Streams a JSON Lines trace one message at a time. Blank lines are skipped.
class TraceReader {
public:
  explicit TraceReader(std::istream& in) : in_(in) {}

  /// Next message, or nullopt at end of input. Throws malformed_input.
  std::optional<Message> next() {
    std::string buf;
    while (std::getline(in_, buf)) {
      ++line_;
      if (detail::blank(buf))
        continue;
      return parse_message(buf, line_);
    }
    return std::nullopt;
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::istream& in_;
  std::size_t line_ = 0;
};

inline Trace load_trace(std::istream& in) {
  Trace out;
  TraceReader reader(in);
  while (auto m = reader.next())
    out.push_back(std::move(*m));
  return out;
}

inline Trace load_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_trace(in);
}

inline LassoTrace lasso_from_json(const json& value) {
  if (!value.is_object())
    throw malformed_input(1, "lasso must be an object with \"prefix\" and \"loop\"");
  for (const auto& [key, _] : value.items())
    if (key != "prefix" && key != "loop")
      throw malformed_input(1, "unexpected key \"" + key + "\" in lasso");
  auto messages = [](const json& v, const char* what) {
    std::vector<Message> out;
    if (!v.is_array())
      throw malformed_input(1, std::string("\"") + what + "\" must be an array");
    for (const auto& item : v)
      out.push_back(message_from_json(item));
    return out;
  };
  if (!value.contains("loop"))
    throw malformed_input(1, "lasso is missing \"loop\"");
  std::vector<Message> prefix = value.contains("prefix") ? messages(value["prefix"], "prefix") : std::vector<Message>{};
  std::vector<Message> loop = messages(value["loop"], "loop");
  return LassoTrace(std::move(prefix), std::move(loop));
}

inline json lasso_to_json(const LassoTrace& t) {
  json out = json::object();
  out["prefix"] = json::array();
  out["loop"] = json::array();
  for (const auto& m : t.prefix())
    out["prefix"].push_back(message_to_json(m));
  for (const auto& m : t.loop())
    out["loop"].push_back(message_to_json(m));
  return out;
}

/// Throws malformed_input or empty_loop.
inline LassoTrace load_lasso(std::string_view text) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> 1-based line
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
      line += text[i] == '\n';
    throw malformed_input(line, e.what());
  }
  return lasso_from_json(value);
}

inline LassoTrace load_lasso(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_lasso(ss.str());
}

} // namespace ltlfo
