#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "hybrid/operator_expr.hpp"

namespace hybrid::dsl {

/// Parse failure with the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset),
        message_(message) {}
  std::size_t offset() const { return offset_; }
  const std::string& bare_message() const { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind {
  Integer,
  ImagUnit,
  Parameter,
  GeneratorAtom,
  VectorSymbol,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Comm,
  Dot,
  Cross,
  Adj,
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

/// Expression tree. Integer exponents of Pow live in int_value of the node
/// itself; vector symbols carry the (sector, kind) base they expand to.
struct Node {
  NodeKind kind;
  long long int_value = 0;
  Param param = Param::m;
  std::optional<Generator> generator;
  std::optional<std::pair<Sector, GenKind>> vector_base;
  NodePtr lhs, rhs;

  explicit Node(NodeKind k) : kind(k) {}
};

/// Standard precedence: ^  >  unary -  >  * /  >  + -, all binary operators
/// left associative; whitespace insignificant. Errors carry byte offsets.
NodePtr parse(const std::string& text);

using Vector3 = std::array<OperatorExpr, 3>;
using Value = std::variant<OperatorExpr, Vector3>;

/// Lowers the tree onto the operator algebra. comm maps to the commutator,
/// dot/cross expand componentwise (Levi-Civita for cross), adj conjugates.
Value eval(const Node& ast);

/// eval that must produce a scalar-valued (non-vector) expression.
OperatorExpr eval_operator(const Node& ast);

/// parse + eval_operator.
OperatorExpr parse_operator(const std::string& text);

}  // namespace hybrid::dsl
