#include "nshyp/cli/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <sstream>

#include "nshyp/errors.hpp"

namespace nshyp::cli {

enum class Op { num, var, add, sub, mul, div, neg, sin, cos, exp };

struct Expression::Node {
  Op op;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr num(double v) {
  return std::make_shared<const Expression::Node>(Expression::Node{Op::num, v, {}, {}});
}
NodePtr var() {
  return std::make_shared<const Expression::Node>(Expression::Node{Op::var, 0.0, {}, {}});
}
bool is_num(const NodePtr& n, double v) { return n->op == Op::num && n->value == v; }

// Node constructors with constant folding, so that derivatives stay small.
NodePtr make(Op op, NodePtr a, NodePtr b = {}) {
  const bool ca = a->op == Op::num, cb = b && b->op == Op::num;
  switch (op) {
    case Op::add:
      if (ca && cb) return num(a->value + b->value);
      if (is_num(a, 0)) return b;
      if (is_num(b, 0)) return a;
      break;
    case Op::sub:
      if (ca && cb) return num(a->value - b->value);
      if (is_num(b, 0)) return a;
      if (is_num(a, 0)) return make(Op::neg, b);
      break;
    case Op::mul:
      if (ca && cb) return num(a->value * b->value);
      if (is_num(a, 0) || is_num(b, 0)) return num(0.0);
      if (is_num(a, 1)) return b;
      if (is_num(b, 1)) return a;
      break;
    case Op::div:
      if (ca && cb && b->value != 0.0) return num(a->value / b->value);
      if (is_num(a, 0)) return num(0.0);
      if (is_num(b, 1)) return a;
      break;
    case Op::neg:
      if (ca) return num(-a->value);
      if (a->op == Op::neg) return a->a;
      break;
    case Op::sin:
      if (ca) return num(std::sin(a->value));
      break;
    case Op::cos:
      if (ca) return num(std::cos(a->value));
      break;
    case Op::exp:
      if (ca) return num(std::exp(a->value));
      break;
    default:
      break;
  }
  return std::make_shared<const Expression::Node>(
      Expression::Node{op, 0.0, std::move(a), std::move(b)});
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const char* what) const {
    std::ostringstream msg;
    msg << "expression '" << s_ << "': " << what << " at position " << pos_;
    throw DomainError(msg.str());
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Op::add, lhs, term());
      else if (eat('-')) lhs = make(Op::sub, lhs, term());
      else return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make(Op::mul, lhs, unary());
      else if (eat('/')) lhs = make(Op::div, lhs, unary());
      else return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Op::neg, unary());
    if (eat('+')) return unary();
    return primary();
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return num(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string word = s_.substr(start, pos_ - start);
      if (word == "x") return var();
      if (word == "pi") return num(std::numbers::pi);
      Op f;
      if (word == "sin") f = Op::sin;
      else if (word == "cos") f = Op::cos;
      else if (word == "exp") f = Op::exp;
      else {
        pos_ = start;
        fail("unknown identifier");
      }
      if (!eat('(')) fail("expected '(' after function name");
      NodePtr arg = expr();
      if (!eat(')')) fail("expected ')'");
      return make(f, arg);
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, double x) {
  switch (n.op) {
    case Op::num: return n.value;
    case Op::var: return x;
    case Op::add: return eval(*n.a, x) + eval(*n.b, x);
    case Op::sub: return eval(*n.a, x) - eval(*n.b, x);
    case Op::mul: return eval(*n.a, x) * eval(*n.b, x);
    case Op::div: return eval(*n.a, x) / eval(*n.b, x);
    case Op::neg: return -eval(*n.a, x);
    case Op::sin: return std::sin(eval(*n.a, x));
    case Op::cos: return std::cos(eval(*n.a, x));
    case Op::exp: return std::exp(eval(*n.a, x));
  }
  return 0.0;
}

NodePtr diff(const NodePtr& n) {
  switch (n->op) {
    case Op::num: return num(0.0);
    case Op::var: return num(1.0);
    case Op::add: return make(Op::add, diff(n->a), diff(n->b));
    case Op::sub: return make(Op::sub, diff(n->a), diff(n->b));
    case Op::mul:
      return make(Op::add, make(Op::mul, diff(n->a), n->b),
                  make(Op::mul, n->a, diff(n->b)));
    case Op::div:
      return make(Op::div,
                  make(Op::sub, make(Op::mul, diff(n->a), n->b),
                       make(Op::mul, n->a, diff(n->b))),
                  make(Op::mul, n->b, n->b));
    case Op::neg: return make(Op::neg, diff(n->a));
    case Op::sin: return make(Op::mul, make(Op::cos, n->a), diff(n->a));
    case Op::cos:
      return make(Op::neg, make(Op::mul, make(Op::sin, n->a), diff(n->a)));
    case Op::exp: return make(Op::mul, n, diff(n->a));
  }
  return num(0.0);
}

bool constant(const Expression::Node& n) {
  if (n.op == Op::var) return false;
  if (n.a && !constant(*n.a)) return false;
  if (n.b && !constant(*n.b)) return false;
  return true;
}

void print(const Expression::Node& n, std::ostream& os) {
  const char* fn = nullptr;
  char bin = 0;
  switch (n.op) {
    case Op::num: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      if (n.value < 0) os << '(' << buf << ')';
      else os << buf;
      return;
    }
    case Op::var: os << 'x'; return;
    case Op::add: bin = '+'; break;
    case Op::sub: bin = '-'; break;
    case Op::mul: bin = '*'; break;
    case Op::div: bin = '/'; break;
    case Op::neg: os << "(-"; print(*n.a, os); os << ')'; return;
    case Op::sin: fn = "sin"; break;
    case Op::cos: fn = "cos"; break;
    case Op::exp: fn = "exp"; break;
  }
  if (fn) {
    os << fn << '(';
    print(*n.a, os);
    os << ')';
    return;
  }
  os << '(';
  print(*n.a, os);
  os << ' ' << bin << ' ';
  print(*n.b, os);
  os << ')';
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  return Expression(Parser(text).parse());
}

Expression Expression::constant(double c) { return Expression(num(c)); }

double Expression::operator()(double x) const { return eval(*root_, x); }

Expression Expression::derivative() const { return Expression(diff(root_)); }

bool Expression::is_constant() const { return nshyp::cli::constant(*root_); }

std::string Expression::str() const {
  std::ostringstream os;
  print(*root_, os);
  return os.str();
}

}  // namespace nshyp::cli
