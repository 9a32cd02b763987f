#include "hybrid/dsl.hpp"

#include <cctype>
#include <limits>

#include "hybrid/representation.hpp"

namespace hybrid::dsl {

namespace {

bool subtree_has_generators(const Node& n) {
  if (n.kind == NodeKind::GeneratorAtom || n.kind == NodeKind::VectorSymbol) return true;
  if (n.lhs && subtree_has_generators(*n.lhs)) return true;
  if (n.rhs && subtree_has_generators(*n.rhs)) return true;
  return false;
}

std::optional<std::pair<Sector, GenKind>> vector_base_from_name(const std::string& name) {
  std::string lowered;
  for (char c : name) lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  // vector symbols are the upper-case spellings only
  for (char c : name)
    if (std::islower(static_cast<unsigned char>(c))) return std::nullopt;
  return Generator::base_from_name(lowered);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : src_(text) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input", pos_);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t offset) {
    throw ParseError(message, offset);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        auto n = std::make_unique<Node>(NodeKind::Add);
        n->lhs = std::move(lhs);
        n->rhs = parse_term();
        lhs = std::move(n);
      } else if (eat('-')) {
        auto n = std::make_unique<Node>(NodeKind::Sub);
        n->lhs = std::move(lhs);
        n->rhs = parse_term();
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (eat('*')) {
        auto n = std::make_unique<Node>(NodeKind::Mul);
        n->lhs = std::move(lhs);
        n->rhs = parse_unary();
        lhs = std::move(n);
      } else if (eat('/')) {
        auto n = std::make_unique<Node>(NodeKind::Div);
        n->lhs = std::move(lhs);
        n->rhs = parse_unary();
        if (subtree_has_generators(*n->rhs))
          fail("nonscalar denominator: generator atoms cannot be divided by", at);
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (eat('-')) {
      auto n = std::make_unique<Node>(NodeKind::Negate);
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    std::size_t at = pos_;
    if (eat('^')) {
      skip_ws();
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        fail("exponent must be a nonnegative integer literal", at + 1);
      long long e = parse_integer();
      auto n = std::make_unique<Node>(NodeKind::Pow);
      n->lhs = std::move(base);
      n->int_value = e;
      return n;
    }
    return base;
  }

  long long parse_integer() {
    skip_ws();
    std::size_t at = pos_;
    long long v = 0;
    bool any = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      if (v > (std::numeric_limits<long long>::max() - 9) / 10)
        fail("integer literal too large", at);
      v = v * 10 + (src_[pos_] - '0');
      ++pos_;
      any = true;
    }
    if (!any) fail("expected an integer", at);
    return v;
  }

  NodePtr parse_atom() {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ >= src_.size()) fail("unexpected end of input", at);
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = std::make_unique<Node>(NodeKind::Integer);
      n->int_value = parse_integer();
      return n;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!eat(')')) fail("expected ')'", pos_);
      return inner;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character", at);

    std::string ident;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])))) {
      ident += src_[pos_];
      ++pos_;
    }

    if (ident == "i") return std::make_unique<Node>(NodeKind::ImagUnit);
    if (ident == "comm" || ident == "dot" || ident == "cross") {
      NodeKind kind = ident == "comm"   ? NodeKind::Comm
                      : ident == "dot"  ? NodeKind::Dot
                                        : NodeKind::Cross;
      if (!eat('(')) fail("expected '(' after '" + ident + "'", pos_);
      auto n = std::make_unique<Node>(kind);
      n->lhs = parse_expr();
      if (!eat(',')) fail("expected ',' in '" + ident + "(...)'", pos_);
      n->rhs = parse_expr();
      if (!eat(')')) fail("expected ')'", pos_);
      return n;
    }
    if (ident == "adj") {
      if (!eat('(')) fail("expected '(' after 'adj'", pos_);
      auto n = std::make_unique<Node>(NodeKind::Adj);
      n->lhs = parse_expr();
      if (!eat(')')) fail("expected ')'", pos_);
      return n;
    }
    if (auto p = param_from_name(ident)) {
      auto n = std::make_unique<Node>(NodeKind::Parameter);
      n->param = *p;
      return n;
    }
    if (auto base = Generator::base_from_name(ident)) {
      if (peek() != '[')
        fail("generator '" + ident + "' requires an axis index like " + ident + "[1]", at);
      eat('[');
      std::size_t idx_at = pos_;
      long long axis = parse_integer();
      if (!eat(']')) fail("expected ']'", pos_);
      if (axis < 1 || axis > 3) fail("generator index out of range (1..3)", idx_at);
      auto n = std::make_unique<Node>(NodeKind::GeneratorAtom);
      n->generator = Generator(base->first, base->second, static_cast<int>(axis));
      return n;
    }
    if (auto base = vector_base_from_name(ident)) {
      auto n = std::make_unique<Node>(NodeKind::VectorSymbol);
      n->vector_base = *base;
      return n;
    }
    fail("unknown symbol '" + ident + "'", at);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

const OperatorExpr* as_scalar(const Value& v) { return std::get_if<OperatorExpr>(&v); }
const Vector3* as_vector(const Value& v) { return std::get_if<Vector3>(&v); }

Value negate(const Value& v) {
  if (const auto* s = as_scalar(v)) return -*s;
  Vector3 out;
  const Vector3& a = *as_vector(v);
  for (int i = 0; i < 3; ++i) out[i] = -a[i];
  return out;
}

}  // namespace

NodePtr parse(const std::string& text) { return Parser(text).run(); }

Value eval(const Node& ast) {
  switch (ast.kind) {
    case NodeKind::Integer:
      return OperatorExpr(ParamScalar(static_cast<long>(ast.int_value)));
    case NodeKind::ImagUnit:
      return OperatorExpr(ParamScalar::i());
    case NodeKind::Parameter:
      return OperatorExpr(ParamScalar::parameter(ast.param));
    case NodeKind::GeneratorAtom:
      return OperatorExpr(*ast.generator);
    case NodeKind::VectorSymbol: {
      Vector3 v;
      for (int axis = 1; axis <= 3; ++axis)
        v[axis - 1] =
            OperatorExpr(Generator(ast.vector_base->first, ast.vector_base->second, axis));
      return v;
    }
    case NodeKind::Negate:
      return negate(eval(*ast.lhs));
    case NodeKind::Add:
    case NodeKind::Sub: {
      Value a = eval(*ast.lhs), b = eval(*ast.rhs);
      bool sub = ast.kind == NodeKind::Sub;
      if (as_scalar(a) && as_scalar(b))
        return sub ? *as_scalar(a) - *as_scalar(b) : *as_scalar(a) + *as_scalar(b);
      if (as_vector(a) && as_vector(b)) {
        Vector3 out;
        for (int i = 0; i < 3; ++i)
          out[i] = sub ? (*as_vector(a))[i] - (*as_vector(b))[i]
                       : (*as_vector(a))[i] + (*as_vector(b))[i];
        return out;
      }
      throw EvalError("cannot add a vector and a scalar");
    }
    case NodeKind::Mul: {
      Value a = eval(*ast.lhs), b = eval(*ast.rhs);
      if (as_scalar(a) && as_scalar(b)) return *as_scalar(a) * *as_scalar(b);
      if (as_scalar(a) && as_vector(b)) {
        Vector3 out;
        for (int i = 0; i < 3; ++i) out[i] = *as_scalar(a) * (*as_vector(b))[i];
        return out;
      }
      if (as_vector(a) && as_scalar(b)) {
        Vector3 out;
        for (int i = 0; i < 3; ++i) out[i] = (*as_vector(a))[i] * *as_scalar(b);
        return out;
      }
      throw EvalError("vector * vector is ambiguous; use dot(A,B) or cross(A,B)");
    }
    case NodeKind::Div: {
      Value a = eval(*ast.lhs), b = eval(*ast.rhs);
      const OperatorExpr* den = as_scalar(b);
      if (!den || !den->is_scalar())
        throw EvalError("division requires a scalar denominator");
      ParamScalar d = den->scalar_part();
      if (d.is_zero()) throw EvalError("division by zero");
      ParamScalar inv = d.inverse();
      if (const auto* s = as_scalar(a)) return s->scaled(inv);
      Vector3 out;
      for (int i = 0; i < 3; ++i) out[i] = (*as_vector(a))[i].scaled(inv);
      return out;
    }
    case NodeKind::Pow: {
      Value a = eval(*ast.lhs);
      const OperatorExpr* s = as_scalar(a);
      if (!s) throw EvalError("vectors cannot be raised to powers; use dot(A,A)");
      OperatorExpr acc = OperatorExpr::identity();
      for (long long k = 0; k < ast.int_value; ++k) acc = acc * *s;
      return acc;
    }
    case NodeKind::Comm: {
      Value a = eval(*ast.lhs), b = eval(*ast.rhs);
      if (!as_scalar(a) || !as_scalar(b))
        throw EvalError("comm expects scalar operator arguments");
      return commutator(*as_scalar(a), *as_scalar(b));
    }
    case NodeKind::Dot: {
      Value a = eval(*ast.lhs), b = eval(*ast.rhs);
      if (!as_vector(a) || !as_vector(b)) throw EvalError("dot expects vector arguments");
      OperatorExpr acc;
      for (int i = 0; i < 3; ++i) acc += (*as_vector(a))[i] * (*as_vector(b))[i];
      return acc;
    }
    case NodeKind::Cross: {
      Value a = eval(*ast.lhs), b = eval(*ast.rhs);
      if (!as_vector(a) || !as_vector(b)) throw EvalError("cross expects vector arguments");
      Vector3 out;
      for (int i = 1; i <= 3; ++i) {
        OperatorExpr acc;
        for (int j = 1; j <= 3; ++j)
          for (int k = 1; k <= 3; ++k) {
            int eps = levi_civita(i, j, k);
            if (eps != 0)
              acc += ((*as_vector(a))[j - 1] * (*as_vector(b))[k - 1])
                         .scaled(ParamScalar(eps));
          }
        out[i - 1] = acc;
      }
      return out;
    }
    case NodeKind::Adj: {
      Value a = eval(*ast.lhs);
      if (const auto* s = as_scalar(a)) return adjoint(*s);
      Vector3 out;
      for (int i = 0; i < 3; ++i) out[i] = adjoint((*as_vector(a))[i]);
      return out;
    }
  }
  throw EvalError("malformed expression tree");
}

OperatorExpr eval_operator(const Node& ast) {
  Value v = eval(ast);
  if (const auto* s = std::get_if<OperatorExpr>(&v)) return *s;
  throw EvalError("expression is vector-valued; take a component or use dot/cross");
}

OperatorExpr parse_operator(const std::string& text) { return eval_operator(*parse(text)); }

}  // namespace hybrid::dsl
