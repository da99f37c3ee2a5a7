#include "kmns/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstddef>

#include "kmns/errors.hpp"

namespace kmns {

namespace {

constexpr int kMaxExponent = 16;

struct Token {
  enum class Kind { kNumber, kIdent, kPlus, kMinus, kStar, kCaret, kLParen,
                    kRParen, kEnd };
  Kind kind = Kind::kEnd;
  double number = 0.0;
  std::string_view ident{};
  std::size_t pos = 0;
};

[[noreturn]] void fail(std::string_view text, std::size_t pos,
                       const std::string& what) {
  throw config_error("expression error at position " + std::to_string(pos) +
                     " in \"" + std::string(text) + "\": " + what);
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::kEnd;
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '+': tok_.kind = Token::Kind::kPlus; ++pos_; return;
      case '-': tok_.kind = Token::Kind::kMinus; ++pos_; return;
      case '*': tok_.kind = Token::Kind::kStar; ++pos_; return;
      case '^': tok_.kind = Token::Kind::kCaret; ++pos_; return;
      case '(': tok_.kind = Token::Kind::kLParen; ++pos_; return;
      case ')': tok_.kind = Token::Kind::kRParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      double value = 0.0;
      const auto res = std::from_chars(begin, end, value);
      if (res.ec != std::errc{})
        fail(text_, pos_, "malformed number");
      tok_.kind = Token::Kind::kNumber;
      tok_.number = value;
      pos_ = std::size_t(res.ptr - text_.data());
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) ||
              text_[end] == '_'))
        ++end;
      tok_.kind = Token::Kind::kIdent;
      tok_.ident = text_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    fail(text_, pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view text, const VariableMap& vars)
      : text_(text), vars_(vars), lex_(text) {}

  std::vector<Expression::Op> run() {
    std::vector<Expression::Op> ops;
    parse_sum(ops);
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::kEnd)
      fail(text_, t.pos, "trailing input after a complete expression");
    return ops;
  }

 private:
  using Op = Expression::Op;
  using OpKind = Expression::OpKind;

  void parse_sum(std::vector<Op>& ops) {
    parse_product(ops);
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::kPlus) {
        lex_.take();
        parse_product(ops);
        ops.push_back({OpKind::kAdd});
      } else if (t.kind == Token::Kind::kMinus) {
        lex_.take();
        parse_product(ops);
        ops.push_back({OpKind::kSub});
      } else {
        return;
      }
    }
  }

  void parse_product(std::vector<Op>& ops) {
    parse_factor(ops);
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::kStar) {
        lex_.take();
        parse_factor(ops);
        ops.push_back({OpKind::kMul});
      } else if (t.kind == Token::Kind::kNumber ||
                 t.kind == Token::Kind::kIdent ||
                 t.kind == Token::Kind::kLParen) {
        fail(text_, t.pos,
             "implicit multiplication is not allowed; write an explicit '*'");
      } else {
        return;
      }
    }
  }

  void parse_factor(std::vector<Op>& ops) {
    int negations = 0;
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::kMinus) {
        lex_.take();
        ++negations;
      } else if (t.kind == Token::Kind::kPlus) {
        lex_.take();
      } else {
        break;
      }
    }
    parse_primary(ops);
    if (lex_.peek().kind == Token::Kind::kCaret) {
      lex_.take();
      const Token e = lex_.take();
      if (e.kind != Token::Kind::kNumber)
        fail(text_, e.pos, "'^' requires a plain integer exponent");
      const int n = static_cast<int>(e.number);
      if (double(n) != e.number || n < 0)
        fail(text_, e.pos, "exponent must be a nonnegative integer");
      if (n > kMaxExponent)
        fail(text_, e.pos, "exponent exceeds the supported maximum of " +
                               std::to_string(kMaxExponent));
      ops.push_back({OpKind::kPow, 0.0, n});
      if (lex_.peek().kind == Token::Kind::kCaret)
        fail(text_, lex_.peek().pos,
             "chained '^' is ambiguous; parenthesize");
    }
    if (negations % 2 == 1) ops.push_back({OpKind::kNeg});
  }

  void parse_primary(std::vector<Op>& ops) {
    const Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::kNumber:
        ops.push_back({OpKind::kConst, t.number});
        return;
      case Token::Kind::kIdent: {
        const auto it = vars_.find(t.ident);
        if (it == vars_.end())
          fail(text_, t.pos,
               "unknown coordinate name '" + std::string(t.ident) + "'");
        if (lex_.peek().kind == Token::Kind::kLParen)
          fail(text_, lex_.peek().pos, "function calls are not allowed");
        ops.push_back({OpKind::kVar, 0.0, it->second});
        return;
      }
      case Token::Kind::kLParen: {
        parse_sum(ops);
        const Token close = lex_.take();
        if (close.kind != Token::Kind::kRParen)
          fail(text_, close.pos, "expected ')'");
        return;
      }
      default:
        fail(text_, t.pos, "expected a number, coordinate, or '('");
    }
  }

  std::string_view text_;
  const VariableMap& vars_;
  Lexer lex_;
};

}  // namespace

VariableMap spherical_variables() {
  return {{"x0", 0}, {"x1", 1}, {"x2", 2}, {"x3", 3},
          {"t", 0},  {"r", 1},  {"theta", 2}, {"phi", 3}};
}

VariableMap cartesian_variables() {
  return {{"x0", 0}, {"x1", 1}, {"x2", 2}, {"x3", 3},
          {"t", 0},  {"x", 1},  {"y", 2},  {"z", 3}};
}

Jet Expression::eval(const JetPoint& x) const {
  std::vector<Jet> stack;
  stack.reserve(8);
  for (const Op& op : ops_) {
    switch (op.kind) {
      case OpKind::kConst:
        stack.push_back(Jet{op.num});
        break;
      case OpKind::kVar:
        stack.push_back(x[std::size_t(op.arg)]);
        break;
      case OpKind::kAdd: {
        const Jet b = stack.back();
        stack.pop_back();
        stack.back() += b;
        break;
      }
      case OpKind::kSub: {
        const Jet b = stack.back();
        stack.pop_back();
        stack.back() -= b;
        break;
      }
      case OpKind::kMul: {
        const Jet b = stack.back();
        stack.pop_back();
        stack.back() = stack.back() * b;
        break;
      }
      case OpKind::kNeg:
        stack.back() = -stack.back();
        break;
      case OpKind::kPow:
        stack.back() = pow_int(stack.back(), op.arg);
        break;
    }
  }
  if (stack.size() != 1)
    throw error("internal inconsistency in expression program");
  return stack.back();
}

Expression parse_expression(std::string_view text, const VariableMap& vars) {
  Expression e;
  e.text_ = std::string(text);
  Parser p(text, vars);
  e.ops_ = p.run();
  if (e.ops_.empty()) fail(text, 0, "empty expression");
  return e;
}

}  // namespace kmns
