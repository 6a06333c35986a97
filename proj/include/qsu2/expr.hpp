#pragma once

// Surface syntax for algebra elements.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*'? factor)*
//   factor := atom ('^' uint)?
//   atom   := 'a' | 'c' | "a'" | "c'" | rational | 'q' | '(' expr ')' | 'star(' expr ')'
//
// A leading '-' before the first term is also accepted. Whitespace is
// ignored. ' is the involution on a single generator.

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "qsu2/algebra.hpp"

namespace qsu2::expr {

inline constexpr unsigned kMaxExponent = 64;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { sum, product, power, star, rational, generator, q };
  Kind kind;
  std::vector<NodePtr> children;
  std::vector<bool> negated;  // sum: sign of each child
  unsigned exponent = 0;      // power
  mpq_class value;            // rational, nonnegative
  std::string name;           // generator: a, c, a', c'

  static NodePtr sum(std::vector<NodePtr> cs, std::vector<bool> neg) {
    auto n = std::make_shared<Node>(Node{Kind::sum, std::move(cs), std::move(neg), 0, 0, {}});
    return n;
  }
  static NodePtr product(std::vector<NodePtr> cs) { return std::make_shared<Node>(Node{Kind::product, std::move(cs), {}, 0, 0, {}}); }
  static NodePtr power(NodePtr base, unsigned e) { return std::make_shared<Node>(Node{Kind::power, {std::move(base)}, {}, e, 0, {}}); }
  static NodePtr star(NodePtr x) { return std::make_shared<Node>(Node{Kind::star, {std::move(x)}, {}, 0, 0, {}}); }
  static NodePtr rational(mpq_class v) { return std::make_shared<Node>(Node{Kind::rational, {}, {}, 0, std::move(v), {}}); }
  static NodePtr generator(std::string g) { return std::make_shared<Node>(Node{Kind::generator, {}, {}, 0, 0, std::move(g)}); }
  static NodePtr q() { return std::make_shared<Node>(Node{Kind::q, {}, {}, 0, 0, {}}); }
};

inline bool equal(const NodePtr& x, const NodePtr& y) {
  if (x->kind != y->kind || x->children.size() != y->children.size()) return false;
  if (x->negated != y->negated || x->exponent != y->exponent || x->value != y->value || x->name != y->name) return false;
  for (std::size_t k = 0; k < x->children.size(); ++k)
    if (!equal(x->children[k], y->children[k])) return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::string src) : s_(std::move(src)) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    skip();
    if (p_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[p_]) + "'", p_);
    return e;
  }

 private:
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool peek(char ch) {
    skip();
    return p_ < s_.size() && s_[p_] == ch;
  }
  bool at_atom_start() {
    skip();
    if (p_ >= s_.size()) return false;
    char ch = s_[p_];
    return ch == 'a' || ch == 'c' || ch == 'q' || ch == '(' || ch == 's' || std::isdigit(static_cast<unsigned char>(ch));
  }

  NodePtr parse_expr() {
    std::vector<NodePtr> terms;
    std::vector<bool> neg;
    bool leading = false;
    if (peek('-')) {
      ++p_;
      leading = true;
    }
    terms.push_back(parse_term());
    neg.push_back(leading);
    while (peek('+') || peek('-')) {
      neg.push_back(s_[p_] == '-');
      ++p_;
      terms.push_back(parse_term());
    }
    if (terms.size() == 1 && !leading) return terms[0];
    return Node::sum(std::move(terms), std::move(neg));
  }

  NodePtr parse_term() {
    std::vector<NodePtr> fs{parse_factor()};
    while (true) {
      if (peek('*')) {
        ++p_;
        fs.push_back(parse_factor());
      } else if (at_atom_start()) {
        fs.push_back(parse_factor());
      } else {
        break;
      }
    }
    if (fs.size() == 1) return fs[0];
    return Node::product(std::move(fs));
  }

  NodePtr parse_factor() {
    NodePtr base = parse_atom();
    if (peek('^')) {
      ++p_;
      skip();
      std::size_t start = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      if (start == p_) throw ParseError("expected an unsigned exponent", start);
      std::string digits = s_.substr(start, p_ - start);
      if (digits.size() > 3 || std::stoul(digits) > kMaxExponent)
        throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), start);
      return Node::power(base, static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  NodePtr parse_atom() {
    skip();
    if (p_ >= s_.size()) throw ParseError("unexpected end of input", p_);
    char ch = s_[p_];
    if (ch == 'a' || ch == 'c') {
      ++p_;
      std::string g(1, ch);
      if (p_ < s_.size() && s_[p_] == '\'') {
        ++p_;
        g += '\'';
      }
      return Node::generator(g);
    }
    if (ch == 'q') {
      ++p_;
      return Node::q();
    }
    if (ch == '(') {
      ++p_;
      NodePtr e = parse_expr();
      if (!peek(')')) throw ParseError("expected ')'", p_);
      ++p_;
      return e;
    }
    if (s_.compare(p_, 5, "star(") == 0) {
      p_ += 5;
      NodePtr e = parse_expr();
      if (!peek(')')) throw ParseError("expected ')'", p_);
      ++p_;
      return Node::star(e);
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      std::string lit = s_.substr(start, p_ - start);
      if (p_ < s_.size() && s_[p_] == '/') {
        std::size_t d0 = ++p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (d0 == p_) throw ParseError("expected a denominator", d0);
        std::string den = s_.substr(d0, p_ - d0);
        if (mpz_class(den) == 0) throw ParseError("zero denominator", d0);
        lit += "/" + den;
      }
      mpq_class v(lit);
      v.canonicalize();
      return Node::rational(v);
    }
    throw ParseError("unexpected '" + std::string(1, ch) + "'", p_);
  }

  std::string s_;
  std::size_t p_ = 0;
};

inline NodePtr parse_ast(const std::string& src) { return Parser(src).parse(); }

/// Text that parses back to the same tree.
inline std::string print(const NodePtr& n) {
  using K = Node::Kind;
  auto wrap = [](const NodePtr& c, bool need) { return need ? "(" + print(c) + ")" : print(c); };
  switch (n->kind) {
    case K::sum: {
      std::string s;
      for (std::size_t k = 0; k < n->children.size(); ++k) {
        const auto& c = n->children[k];
        if (k == 0)
          s += n->negated[0] ? "-" : "";
        else
          s += n->negated[k] ? " - " : " + ";
        s += wrap(c, c->kind == K::sum);
      }
      return s;
    }
    case K::product: {
      std::string s;
      for (std::size_t k = 0; k < n->children.size(); ++k) {
        const auto& c = n->children[k];
        if (k) s += "*";
        s += wrap(c, c->kind == K::sum || c->kind == K::product);
      }
      return s;
    }
    case K::power: {
      const auto& b = n->children[0];
      bool need = b->kind == K::sum || b->kind == K::product || b->kind == K::power;
      return wrap(b, need) + "^" + std::to_string(n->exponent);
    }
    case K::star:
      return "star(" + print(n->children[0]) + ")";
    case K::rational:
      return n->value.get_str();
    case K::generator:
      return n->name;
    case K::q:
      return "q";
  }
  return {};
}

inline AlgElem evaluate(const NodePtr& n) {
  using K = Node::Kind;
  switch (n->kind) {
    case K::sum: {
      AlgElem s;
      for (std::size_t k = 0; k < n->children.size(); ++k) {
        AlgElem c = evaluate(n->children[k]);
        s += n->negated[k] ? c.scaled(Scalar(-1)) : c;
      }
      return s;
    }
    case K::product: {
      AlgElem p(Scalar(1));
      for (const auto& c : n->children) p = p * evaluate(c);
      return p;
    }
    case K::power: {
      AlgElem b = evaluate(n->children[0]);
      AlgElem p(Scalar(1));
      for (unsigned k = 0; k < n->exponent; ++k) p = p * b;
      return p;
    }
    case K::star:
      return star(evaluate(n->children[0]));
    case K::rational:
      return AlgElem(Scalar(GaussRat(n->value)));
    case K::generator:
      if (n->name == "a") return gen::a();
      if (n->name == "c") return gen::c();
      if (n->name == "a'") return gen::a_star();
      return gen::c_star();
    case K::q:
      return AlgElem(Scalar::q());
  }
  return {};
}

inline AlgElem parse(const std::string& src) { return evaluate(parse_ast(src)); }

}  // namespace qsu2::expr
