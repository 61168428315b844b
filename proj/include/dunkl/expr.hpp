#ifndef DUNKL_EXPR_HPP
#define DUNKL_EXPR_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dunkl::expr {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (offset " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

struct EvalError : std::runtime_error {
  EvalError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (offset " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

// Arithmetic expressions over variables x1..xd with +,-,*,/,^, unary minus and
// the functions sin, cos, exp, log, sqrt, abs, min, max, pow.
// No implicit multiplication: "2x1" is a syntax error.
class Expression {
 public:
  static Expression parse(std::string_view text, int dimension);

  double evaluate(std::span<const double> point) const;

  // Canonical form with minimal parentheses; parses back to an equal tree.
  std::string to_string() const;

  int dimension() const { return dimension_; }

  bool equal_tree(const Expression& other) const;

 private:
  enum class Op : unsigned char {
    literal, variable, add, sub, mul, div, pow_op, neg,
    fn_sin, fn_cos, fn_exp, fn_log, fn_sqrt, fn_abs, fn_min, fn_max
  };

  struct Node {
    Op op;
    double value = 0.0;   // literal
    int var_index = 0;    // variable (0-based)
    int lhs = -1;
    int rhs = -1;
    std::size_t pos = 0;  // source offset, for error reports
  };

  friend class Parser;

  double eval_node(int node, std::span<const double> point) const;
  void print_node(int node, int parent_level, bool right_side, std::string& out) const;
  static bool nodes_equal(const Expression& a, int ia, const Expression& b, int ib);

  std::vector<Node> nodes_;
  int root_ = -1;
  int dimension_ = 0;
};

}  // namespace dunkl::expr

#endif
