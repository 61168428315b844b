#include "dunkl/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace dunkl::expr {

namespace {

constexpr int kMaxDepth = 256;

struct Token {
  enum class Kind { number, ident, op, lparen, rparen, comma, end };
  Kind kind = Kind::end;
  std::size_t pos = 0;
  double number = 0.0;
  char op = 0;
  std::string_view ident = {};
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    const std::size_t pos = i_;
    if (i_ >= text_.size()) return {Token::Kind::end, pos};
    const char c = text_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* begin = text_.data() + i_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr == begin) throw ParseError("invalid number", pos);
      i_ += static_cast<std::size_t>(ptr - begin);
      return {Token::Kind::number, pos, value};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      Token t{Token::Kind::ident, pos};
      t.ident = text_.substr(i_, j - i_);
      i_ = j;
      return t;
    }
    ++i_;
    switch (c) {
      case '+': case '-': case '*': case '/': case '^': {
        Token t{Token::Kind::op, pos};
        t.op = c;
        return t;
      }
      case '(': return {Token::Kind::lparen, pos};
      case ')': return {Token::Kind::rparen, pos};
      case ',': return {Token::Kind::comma, pos};
      default: throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  }

 private:
  std::string_view text_;
  std::size_t i_ = 0;
};

}  // namespace

class Parser {
 public:
  Parser(std::string_view text, int dimension) : lexer_(text), dimension_(dimension) {
    advance();
  }

  Expression run() {
    Expression e;
    e.dimension_ = dimension_;
    nodes_ = &e.nodes_;
    e.root_ = parse_expression(0, 0);
    if (cur_.kind != Token::Kind::end) throw ParseError("trailing input", cur_.pos);
    return e;
  }

 private:
  using Op = Expression::Op;

  void advance() { cur_ = lexer_.next(); }

  int make(Expression::Node n) {
    nodes_->push_back(n);
    return static_cast<int>(nodes_->size()) - 1;
  }

  // Precedence levels: 1 additive, 2 multiplicative, 3 unary minus, 4 power.
  // '^' is right-associative and binds tighter than unary minus, so the
  // right operand of '^' is parsed at the unary level ("x^-2" works,
  // "-x^2" is -(x^2)).
  int parse_expression(int min_level, int depth) {
    if (depth > kMaxDepth) throw ParseError("expression too deeply nested", cur_.pos);
    int lhs = parse_unary(depth);
    for (;;) {
      if (cur_.kind != Token::Kind::op) return lhs;
      const char op = cur_.op;
      const int level = (op == '+' || op == '-') ? 1 : (op == '*' || op == '/') ? 2 : 4;
      if (level < min_level) return lhs;
      const std::size_t pos = cur_.pos;
      advance();
      int rhs;
      if (op == '^') {
        rhs = parse_power_operand(depth + 1);
      } else {
        rhs = parse_expression(level + 1, depth + 1);
      }
      Expression::Node n;
      n.op = op == '+' ? Op::add : op == '-' ? Op::sub : op == '*' ? Op::mul
             : op == '/' ? Op::div : Op::pow_op;
      n.lhs = lhs;
      n.rhs = rhs;
      n.pos = pos;
      lhs = make(n);
    }
  }

  int parse_power_operand(int depth) {
    if (depth > kMaxDepth) throw ParseError("expression too deeply nested", cur_.pos);
    if (cur_.kind == Token::Kind::op && cur_.op == '-') {
      const std::size_t pos = cur_.pos;
      advance();
      Expression::Node n;
      n.op = Op::neg;
      n.lhs = parse_power_operand(depth + 1);
      n.pos = pos;
      return make(n);
    }
    int base = parse_primary(depth);
    if (cur_.kind == Token::Kind::op && cur_.op == '^') {
      const std::size_t pos = cur_.pos;
      advance();
      Expression::Node n;
      n.op = Op::pow_op;
      n.lhs = base;
      n.rhs = parse_power_operand(depth + 1);
      n.pos = pos;
      return make(n);
    }
    return base;
  }

  int parse_unary(int depth) {
    if (depth > kMaxDepth) throw ParseError("expression too deeply nested", cur_.pos);
    if (cur_.kind == Token::Kind::op && cur_.op == '-') {
      const std::size_t pos = cur_.pos;
      advance();
      Expression::Node n;
      n.op = Op::neg;
      n.lhs = parse_unary(depth + 1);
      n.pos = pos;
      return make(n);
    }
    if (cur_.kind == Token::Kind::op && cur_.op == '+') {
      advance();
      return parse_unary(depth + 1);
    }
    return parse_primary(depth);
  }

  int parse_primary(int depth) {
    if (depth > kMaxDepth) throw ParseError("expression too deeply nested", cur_.pos);
    switch (cur_.kind) {
      case Token::Kind::number: {
        Expression::Node n;
        n.op = Op::literal;
        n.value = cur_.number;
        n.pos = cur_.pos;
        advance();
        return maybe_power(make(n), depth);
      }
      case Token::Kind::lparen: {
        advance();
        int inner = parse_expression(0, depth + 1);
        expect_rparen();
        return maybe_power(inner, depth);
      }
      case Token::Kind::ident:
        return maybe_power(parse_ident(depth), depth);
      case Token::Kind::end:
        throw ParseError("unexpected end of input", cur_.pos);
      default:
        throw ParseError("unexpected token", cur_.pos);
    }
  }

  // Attaches a trailing right-associative '^' to a primary.
  int maybe_power(int base, int depth) {
    if (cur_.kind == Token::Kind::op && cur_.op == '^') {
      const std::size_t pos = cur_.pos;
      advance();
      Expression::Node n;
      n.op = Op::pow_op;
      n.lhs = base;
      n.rhs = parse_power_operand(depth + 1);
      n.pos = pos;
      return make(n);
    }
    return base;
  }

  int parse_ident(int depth) {
    const Token tok = cur_;
    advance();
    const std::string_view name = tok.ident;
    if (name.size() >= 2 && name[0] == 'x') {
      int index = 0;
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
          digits = false;
          break;
        }
        index = index * 10 + (name[i] - '0');
        if (index > 1000) throw ParseError("variable index out of range", tok.pos);
      }
      if (digits) {
        if (index < 1 || index > dimension_)
          throw ParseError("variable index exceeds dimension " + std::to_string(dimension_),
                           tok.pos);
        Expression::Node n;
        n.op = Op::variable;
        n.var_index = index - 1;
        n.pos = tok.pos;
        return make(n);
      }
    }
    struct Fn {
      std::string_view name;
      Op op;
      int arity;
    };
    static constexpr Fn fns[] = {
        {"sin", Op::fn_sin, 1},  {"cos", Op::fn_cos, 1}, {"exp", Op::fn_exp, 1},
        {"log", Op::fn_log, 1},  {"sqrt", Op::fn_sqrt, 1}, {"abs", Op::fn_abs, 1},
        {"min", Op::fn_min, 2},  {"max", Op::fn_max, 2}, {"pow", Op::pow_op, 2},
    };
    for (const Fn& fn : fns) {
      if (name != fn.name) continue;
      if (cur_.kind != Token::Kind::lparen)
        throw ParseError("expected '(' after function name", cur_.pos);
      advance();
      int a = parse_expression(0, depth + 1);
      int b = -1;
      if (fn.arity == 2) {
        if (cur_.kind != Token::Kind::comma)
          throw ParseError(std::string(fn.name) + " expects 2 arguments", cur_.pos);
        advance();
        b = parse_expression(0, depth + 1);
      } else if (cur_.kind == Token::Kind::comma) {
        throw ParseError(std::string(fn.name) + " expects 1 argument", cur_.pos);
      }
      expect_rparen();
      Expression::Node n;
      n.op = fn.op;
      n.lhs = a;
      n.rhs = b;
      n.pos = tok.pos;
      return make(n);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", tok.pos);
  }

  void expect_rparen() {
    if (cur_.kind != Token::Kind::rparen)
      throw ParseError("unbalanced parenthesis", cur_.pos);
    advance();
  }

  Lexer lexer_;
  Token cur_{Token::Kind::end, 0};
  int dimension_;
  std::vector<Expression::Node>* nodes_ = nullptr;
};

Expression Expression::parse(std::string_view text, int dimension) {
  if (dimension < 1) throw ParseError("dimension must be positive", 0);
  return Parser(text, dimension).run();
}

double Expression::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dimension_)
    throw EvalError("point dimension mismatch", 0);
  return eval_node(root_, point);
}

double Expression::eval_node(int node, std::span<const double> point) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.op) {
    case Op::literal: return n.value;
    case Op::variable: return point[static_cast<std::size_t>(n.var_index)];
    case Op::add: return eval_node(n.lhs, point) + eval_node(n.rhs, point);
    case Op::sub: return eval_node(n.lhs, point) - eval_node(n.rhs, point);
    case Op::mul: return eval_node(n.lhs, point) * eval_node(n.rhs, point);
    case Op::div: {
      const double a = eval_node(n.lhs, point);
      const double b = eval_node(n.rhs, point);
      if (b == 0.0) throw EvalError("division by zero", n.pos);
      return a / b;
    }
    case Op::pow_op: {
      const double a = eval_node(n.lhs, point);
      const double b = eval_node(n.rhs, point);
      if (a == 0.0 && b < 0.0) throw EvalError("zero raised to negative power", n.pos);
      const double r = std::pow(a, b);
      if (std::isnan(r)) throw EvalError("negative base with non-integer exponent", n.pos);
      return r;
    }
    case Op::neg: return -eval_node(n.lhs, point);
    case Op::fn_sin: return std::sin(eval_node(n.lhs, point));
    case Op::fn_cos: return std::cos(eval_node(n.lhs, point));
    case Op::fn_exp: return std::exp(eval_node(n.lhs, point));
    case Op::fn_log: {
      const double a = eval_node(n.lhs, point);
      if (a <= 0.0) throw EvalError("log of non-positive value", n.pos);
      return std::log(a);
    }
    case Op::fn_sqrt: {
      const double a = eval_node(n.lhs, point);
      if (a < 0.0) throw EvalError("sqrt of negative value", n.pos);
      return std::sqrt(a);
    }
    case Op::fn_abs: return std::fabs(eval_node(n.lhs, point));
    case Op::fn_min: return std::fmin(eval_node(n.lhs, point), eval_node(n.rhs, point));
    case Op::fn_max: return std::fmax(eval_node(n.lhs, point), eval_node(n.rhs, point));
  }
  throw EvalError("corrupt expression tree", n.pos);
}

namespace {

std::string format_literal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

int level_of(int op_kind) { return op_kind; }

}  // namespace

void Expression::print_node(int node, int parent_level, bool right_side,
                            std::string& out) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  auto binary = [&](const char* sym, int level, bool assoc_left) {
    const bool parens = level < parent_level || (level == parent_level && right_side && assoc_left);
    if (parens) out += '(';
    print_node(n.lhs, level, false, out);
    out += sym;
    print_node(n.rhs, level + (assoc_left ? 1 : 0), true, out);
    if (parens) out += ')';
  };
  switch (n.op) {
    case Op::literal: {
      if (n.value < 0 || std::signbit(n.value)) {
        // negative literals only arise from folded input like "1e-3"
        out += '(';
        out += format_literal(n.value);
        out += ')';
      } else {
        out += format_literal(n.value);
      }
      return;
    }
    case Op::variable:
      out += 'x';
      out += std::to_string(n.var_index + 1);
      return;
    case Op::add: binary(" + ", level_of(1), true); return;
    case Op::sub: binary(" - ", level_of(1), true); return;
    case Op::mul: binary("*", level_of(2), true); return;
    case Op::div: binary("/", level_of(2), true); return;
    case Op::pow_op:
      if (n.rhs >= 0) {
        const bool parens = 4 < parent_level;
        if (parens) out += '(';
        print_node(n.lhs, 5, false, out);
        out += '^';
        print_node(n.rhs, 3, true, out);
        if (parens) out += ')';
      }
      return;
    case Op::neg: {
      const bool parens = 3 < parent_level;
      if (parens) out += '(';
      out += '-';
      print_node(n.lhs, 3, true, out);
      if (parens) out += ')';
      return;
    }
    case Op::fn_sin: case Op::fn_cos: case Op::fn_exp: case Op::fn_log:
    case Op::fn_sqrt: case Op::fn_abs: {
      static const char* names[] = {"sin", "cos", "exp", "log", "sqrt", "abs"};
      out += names[static_cast<int>(n.op) - static_cast<int>(Op::fn_sin)];
      out += '(';
      print_node(n.lhs, 0, false, out);
      out += ')';
      return;
    }
    case Op::fn_min: case Op::fn_max: {
      out += (n.op == Op::fn_min) ? "min(" : "max(";
      print_node(n.lhs, 0, false, out);
      out += ", ";
      print_node(n.rhs, 0, false, out);
      out += ')';
      return;
    }
  }
}

std::string Expression::to_string() const {
  std::string out;
  print_node(root_, 0, false, out);
  return out;
}

bool Expression::nodes_equal(const Expression& a, int ia, const Expression& b, int ib) {
  if ((ia < 0) != (ib < 0)) return false;
  if (ia < 0) return true;
  const Node& na = a.nodes_[static_cast<std::size_t>(ia)];
  const Node& nb = b.nodes_[static_cast<std::size_t>(ib)];
  if (na.op != nb.op) return false;
  switch (na.op) {
    case Op::literal:
      return na.value == nb.value ||
             (std::isnan(na.value) && std::isnan(nb.value));
    case Op::variable:
      return na.var_index == nb.var_index;
    default:
      return nodes_equal(a, na.lhs, b, nb.lhs) && nodes_equal(a, na.rhs, b, nb.rhs);
  }
}

bool Expression::equal_tree(const Expression& other) const {
  return dimension_ == other.dimension_ && nodes_equal(*this, root_, other, other.root_);
}

}  // namespace dunkl::expr
