#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace ltlfo {

namespace detail {

inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace detail

/// A variable or a constant. Constants evaluate to their own text.
struct Term {
  enum class Kind : std::uint8_t { variable, constant };

  Kind kind = Kind::constant;
  std::string text;

  static Term variable(std::string name) { return {Kind::variable, std::move(name)}; }
  static Term constant(std::string value) { return {Kind::constant, std::move(value)}; }

  bool is_variable() const noexcept { return kind == Kind::variable; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Child-axis path anchored at the root element, e.g. "/message/stock/name".
class Path {
public:
  Path() = default;

  explicit Path(std::vector<std::string> segments) : segments_(std::move(segments)) {
    if (segments_.empty())
      throw error("path must have at least one segment");
    for (const auto& s : segments_)
      if (s.empty() || s.find('/') != std::string::npos)
        throw error("invalid path segment '" + s + "'");
  }

  /// Parses "/seg(/seg)*". Throws ltlfo::error on anything else.
  static Path parse(std::string_view text) {
    if (text.empty() || text.front() != '/')
      throw error("path must start with '/': \"" + std::string(text) + "\"");
    std::vector<std::string> segments;
    std::size_t start = 1;
    while (true) {
      auto slash = text.find('/', start);
      auto seg = text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
      if (seg.empty())
        throw error("empty path segment in \"" + std::string(text) + "\"");
      segments.emplace_back(seg);
      if (slash == std::string_view::npos)
        break;
      start = slash + 1;
    }
    return Path(std::move(segments));
  }

  const std::vector<std::string>& segments() const noexcept { return segments_; }

  std::string to_string() const {
    std::string out;
    for (const auto& s : segments_) {
      out += '/';
      out += s;
    }
    return out;
  }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

private:
  std::vector<std::string> segments_;
};

enum class Op : std::uint8_t {
  eq,
  neq,
  lnot,
  land,
  lor,
  implies,
  next,
  finally,
  globally,
  until,
  release,
  exists,
  forall,
  truth,
  falsity,
};

inline bool is_temporal(Op op) noexcept {
  return op == Op::next || op == Op::finally || op == Op::globally || op == Op::until || op == Op::release;
}

inline bool is_binary(Op op) noexcept {
  return op == Op::land || op == Op::lor || op == Op::implies || op == Op::until || op == Op::release;
}

inline bool is_quantifier(Op op) noexcept { return op == Op::exists || op == Op::forall; }

inline bool is_atom(Op op) noexcept { return op == Op::eq || op == Op::neq; }

/// Immutable LTL-FO+ formula with value semantics. Copies share the
/// underlying tree; equality is structural.
class Formula {
  struct Node {
    Op op;
    Term lhs, rhs;        // eq / neq
    std::string var;      // quantifiers
    Path path;            // quantifiers
    std::shared_ptr<const Node> left, right;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

public:
  static Formula equal(Term a, Term b) { return atom(Op::eq, std::move(a), std::move(b)); }
  static Formula not_equal(Term a, Term b) { return atom(Op::neq, std::move(a), std::move(b)); }
  static Formula truth() { return make(Op::truth, nullptr, nullptr); }
  static Formula falsity() { return make(Op::falsity, nullptr, nullptr); }
  static Formula negation(const Formula& f) { return make(Op::lnot, f.node_, nullptr); }
  static Formula conjunction(const Formula& a, const Formula& b) { return make(Op::land, a.node_, b.node_); }
  static Formula disjunction(const Formula& a, const Formula& b) { return make(Op::lor, a.node_, b.node_); }
  static Formula implication(const Formula& a, const Formula& b) { return make(Op::implies, a.node_, b.node_); }
  static Formula next(const Formula& f) { return make(Op::next, f.node_, nullptr); }
  static Formula finally(const Formula& f) { return make(Op::finally, f.node_, nullptr); }
  static Formula globally(const Formula& f) { return make(Op::globally, f.node_, nullptr); }
  static Formula until(const Formula& a, const Formula& b) { return make(Op::until, a.node_, b.node_); }
  static Formula release(const Formula& a, const Formula& b) { return make(Op::release, a.node_, b.node_); }
  static Formula exists(std::string var, Path path, const Formula& body) {
    return quantifier(Op::exists, std::move(var), std::move(path), body);
  }
  static Formula forall(std::string var, Path path, const Formula& body) {
    return quantifier(Op::forall, std::move(var), std::move(path), body);
  }

  Op op() const noexcept { return node_->op; }
  const Term& lhs() const noexcept { return node_->lhs; }
  const Term& rhs() const noexcept { return node_->rhs; }
  const std::string& var() const noexcept { return node_->var; }
  const Path& path() const noexcept { return node_->path; }

  /// First operand of binary operators; the operand of unary ones and quantifiers.
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  Formula body() const { return left(); }

  std::size_t hash() const noexcept { return node_->hash; }
  /// Number of AST nodes (terms are not counted).
  std::size_t node_count() const noexcept { return node_->size; }

  /// Identity of the shared node; stable for the lifetime of any copy.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) { return equal_nodes(a.node_.get(), b.node_.get()); }

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula atom(Op op, Term a, Term b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    std::size_t h = static_cast<std::size_t>(op);
    for (const Term* t : {&n->lhs, &n->rhs}) {
      h = detail::hash_mix(h, static_cast<std::size_t>(t->kind));
      h = detail::hash_mix(h, std::hash<std::string>{}(t->text));
    }
    n->hash = h;
    return Formula(std::move(n));
  }

  static Formula make(Op op, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    std::size_t h = detail::hash_mix(0x51ed27, static_cast<std::size_t>(op));
    if (l) {
      h = detail::hash_mix(h, l->hash);
      n->size += l->size;
    }
    if (r) {
      h = detail::hash_mix(h, r->hash);
      n->size += r->size;
    }
    n->hash = h;
    n->left = std::move(l);
    n->right = std::move(r);
    return Formula(std::move(n));
  }

  static Formula quantifier(Op op, std::string var, Path path, const Formula& body) {
    if (var.empty())
      throw error("quantified variable name must not be empty");
    auto n = std::make_shared<Node>();
    n->op = op;
    std::size_t h = detail::hash_mix(0x9a11, static_cast<std::size_t>(op));
    h = detail::hash_mix(h, std::hash<std::string>{}(var));
    h = detail::hash_mix(h, std::hash<std::string>{}(path.to_string()));
    h = detail::hash_mix(h, body.node_->hash);
    n->var = std::move(var);
    n->path = std::move(path);
    n->size += body.node_->size;
    n->left = body.node_;
    n->hash = h;
    return Formula(std::move(n));
  }

  static bool equal_nodes(const Node* a, const Node* b) {
    if (a == b)
      return true;
    if (!a || !b || a->hash != b->hash || a->op != b->op || a->size != b->size)
      return false;
    if (is_atom(a->op))
      return a->lhs == b->lhs && a->rhs == b->rhs;
    if (is_quantifier(a->op) && (a->var != b->var || a->path != b->path))
      return false;
    return equal_nodes(a->left.get(), b->left.get()) && equal_nodes(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::string term_text(const Term& t) { return t.is_variable() ? t.text : quote(t.text); }

// Binding strength used when printing; matches the parser's precedence.
inline int precedence(Op op) {
  switch (op) {
  case Op::implies: return 1;
  case Op::lor: return 2;
  case Op::land: return 3;
  case Op::until:
  case Op::release: return 4;
  default: return 5;
  }
}

inline void print(const Formula& f, std::string& out) {
  auto child = [&out](const Formula& c, int min_prec) {
    if (precedence(c.op()) < min_prec) {
      out += '(';
      print(c, out);
      out += ')';
    } else {
      print(c, out);
    }
  };
  switch (f.op()) {
  case Op::eq:
  case Op::neq:
    out += term_text(f.lhs());
    out += f.op() == Op::eq ? " = " : " != ";
    out += term_text(f.rhs());
    return;
  case Op::truth: out += "true"; return;
  case Op::falsity: out += "false"; return;
  case Op::lnot: out += "!"; child(f.body(), 5); return;
  case Op::next: out += "X "; child(f.body(), 5); return;
  case Op::finally: out += "F "; child(f.body(), 5); return;
  case Op::globally: out += "G "; child(f.body(), 5); return;
  case Op::exists:
  case Op::forall:
    out += f.op() == Op::exists ? "exists " : "forall ";
    out += f.var();
    out += " in ";
    out += quote(f.path().to_string());
    out += " : ";
    child(f.body(), 5);
    return;
  default: break;
  }
  // Binary operators. U/R and -> are right-associative, & and | are
  // left-associative; the tighter side gets parenthesized on ties.
  const int p = precedence(f.op());
  const bool right_assoc = f.op() == Op::until || f.op() == Op::release || f.op() == Op::implies;
  child(f.left(), right_assoc ? p + 1 : p);
  switch (f.op()) {
  case Op::land: out += " & "; break;
  case Op::lor: out += " | "; break;
  case Op::implies: out += " -> "; break;
  case Op::until: out += " U "; break;
  case Op::release: out += " R "; break;
  default: break;
  }
  child(f.right(), right_assoc ? p : p + 1);
}

} // namespace detail

/// Renders the formula in the concrete grammar accepted by parse().
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Structural queries

inline std::size_t temporal_depth(const Formula& f) {
  switch (f.op()) {
  case Op::eq:
  case Op::neq:
  case Op::truth:
  case Op::falsity: return 0;
  default: break;
  }
  std::size_t d = temporal_depth(f.left());
  if (is_binary(f.op()))
    d = std::max(d, temporal_depth(f.right()));
  return d + (is_temporal(f.op()) ? 1 : 0);
}

/// Variables occurring in (in)equalities that no enclosing quantifier binds.
inline std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  switch (f.op()) {
  case Op::eq:
  case Op::neq:
    for (const Term* t : {&f.lhs(), &f.rhs()})
      if (t->is_variable())
        out.insert(t->text);
    return out;
  case Op::truth:
  case Op::falsity: return out;
  case Op::exists:
  case Op::forall:
    out = free_variables(f.body());
    out.erase(f.var());
    return out;
  default: break;
  }
  out = free_variables(f.left());
  if (is_binary(f.op())) {
    auto r = free_variables(f.right());
    out.insert(r.begin(), r.end());
  }
  return out;
}

/// Names bound by any quantifier in f.
inline std::set<std::string> quantified_variables(const Formula& f) {
  std::set<std::string> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (is_atom(g.op()) || g.op() == Op::truth || g.op() == Op::falsity)
      continue;
    if (is_quantifier(g.op()))
      out.insert(g.var());
    stack.push_back(g.left());
    if (is_binary(g.op()))
      stack.push_back(g.right());
  }
  return out;
}

namespace detail {

inline void check_scopes(const Formula& f, std::vector<std::string>& scope) {
  auto bound = [&scope](const std::string& v) { return std::find(scope.begin(), scope.end(), v) != scope.end(); };
  switch (f.op()) {
  case Op::eq:
  case Op::neq:
    for (const Term* t : {&f.lhs(), &f.rhs()})
      if (t->is_variable() && !bound(t->text))
        throw unbound_variable(t->text);
    return;
  case Op::truth:
  case Op::falsity: return;
  case Op::exists:
  case Op::forall:
    if (bound(f.var()))
      throw shadowed_variable(f.var());
    scope.push_back(f.var());
    check_scopes(f.body(), scope);
    scope.pop_back();
    return;
  default: break;
  }
  check_scopes(f.left(), scope);
  if (is_binary(f.op()))
    check_scopes(f.right(), scope);
}

} // namespace detail

/// Throws unbound_variable or shadowed_variable unless every variable
/// occurrence lies under exactly one quantifier binding it.
inline void check_well_formed(const Formula& f) {
  std::vector<std::string> scope;
  detail::check_scopes(f, scope);
}

/// True when f contains none of !, ->, F, G, true, false.
inline bool is_nnf(const Formula& f) {
  switch (f.op()) {
  case Op::eq:
  case Op::neq: return true;
  case Op::lnot:
  case Op::implies:
  case Op::finally:
  case Op::globally:
  case Op::truth:
  case Op::falsity: return false;
  default: break;
  }
  if (!is_nnf(f.left()))
    return false;
  return !is_binary(f.op()) || is_nnf(f.right());
}

// ---------------------------------------------------------------------------
// Negation normal form

/// The equality standing for `true` once literals are lowered.
inline Formula lowered_true() { return Formula::equal(Term::constant("true"), Term::constant("true")); }
/// The inequality standing for `false` once literals are lowered.
inline Formula lowered_false() { return Formula::not_equal(Term::constant("false"), Term::constant("false")); }

namespace detail {

inline Formula nnf(const Formula& f, bool negated) {
  switch (f.op()) {
  case Op::eq: return negated ? Formula::not_equal(f.lhs(), f.rhs()) : f;
  case Op::neq: return negated ? Formula::equal(f.lhs(), f.rhs()) : f;
  // Negated literals dualize the lowered atom itself so that negation stays
  // an involution on the output.
  case Op::truth: return negated ? Formula::not_equal(Term::constant("true"), Term::constant("true")) : lowered_true();
  case Op::falsity: return negated ? Formula::equal(Term::constant("false"), Term::constant("false")) : lowered_false();
  case Op::lnot: return nnf(f.body(), !negated);
  case Op::land:
  case Op::lor: {
    auto l = nnf(f.left(), negated);
    auto r = nnf(f.right(), negated);
    return (f.op() == Op::land) != negated ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
  }
  case Op::implies: {
    // a -> b == !a | b ; !(a -> b) == a & !b
    auto l = nnf(f.left(), !negated);
    auto r = nnf(f.right(), negated);
    return negated ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
  }
  case Op::next: return Formula::next(nnf(f.body(), negated));
  case Op::finally: {
    // F b == true U b ; !F b == !true R !b
    auto t = nnf(Formula::truth(), negated);
    auto b = nnf(f.body(), negated);
    return negated ? Formula::release(t, b) : Formula::until(t, b);
  }
  case Op::globally: {
    // G b == false R b ; !G b == !false U !b
    auto t = nnf(Formula::falsity(), negated);
    auto b = nnf(f.body(), negated);
    return negated ? Formula::until(t, b) : Formula::release(t, b);
  }
  case Op::until:
  case Op::release: {
    auto l = nnf(f.left(), negated);
    auto r = nnf(f.right(), negated);
    return (f.op() == Op::until) != negated ? Formula::until(l, r) : Formula::release(l, r);
  }
  case Op::exists:
  case Op::forall: {
    auto b = nnf(f.body(), negated);
    return (f.op() == Op::exists) != negated ? Formula::exists(f.var(), f.path(), b)
                                             : Formula::forall(f.var(), f.path(), b);
  }
  }
  return f;
}

} // namespace detail

/// Rewrites f into negation normal form: negations are pushed onto
/// (in)equalities, F/G/-> are eliminated and true/false are lowered to
/// "true" = "true" and "false" != "false".
inline Formula to_nnf(const Formula& f) { return detail::nnf(f, false); }

/// NNF of the complement of f.
inline Formula negate(const Formula& f) { return detail::nnf(f, true); }

/// Closure of f under taking operands of &, |, U, R and bodies of X and
/// quantifiers. Iteration order is the pre-order of a depth-first walk;
/// structurally equal subformulas appear once.
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second)
      continue;
    out.push_back(g);
    if (is_atom(g.op()) || g.op() == Op::truth || g.op() == Op::falsity)
      continue;
    if (is_binary(g.op()))
      stack.push_back(g.right());
    stack.push_back(g.left());
  }
  return out;
}

} // namespace ltlfo

template <>
struct std::hash<ltlfo::Formula> {
  std::size_t operator()(const ltlfo::Formula& f) const noexcept { return f.hash(); }
};
