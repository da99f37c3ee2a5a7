#pragma once

// Strict polynomial expressions over the four chart coordinates, evaluated on
// jets.  The grammar is a deliberate whitelist: decimal numbers, named
// coordinates, binary + - *, ^ with a nonnegative integer literal exponent,
// parentheses, and unary +/-.  No division, no function calls, no implicit
// multiplication.  Anything else is rejected with a diagnostic that points at
// the offending position.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kmns/geometry.hpp"
#include "kmns/jet.hpp"

namespace kmns {

// coordinate-name table: maps an identifier to a slot 0..3
using VariableMap = std::map<std::string, int, std::less<>>;

// x0..x3 plus t/r/theta/phi
VariableMap spherical_variables();
// x0..x3 plus t/x/y/z
VariableMap cartesian_variables();

class Expression {
 public:
  Expression() = default;

  // evaluate on a seeded coordinate point; jets propagate derivatives
  Jet eval(const JetPoint& x) const;
  const std::string& text() const { return text_; }
  bool empty() const { return ops_.empty(); }

  // postfix program cells; public so the parser implementation can build them
  enum class OpKind : int { kConst, kVar, kAdd, kSub, kMul, kNeg, kPow };
  struct Op {
    OpKind kind;
    double num = 0.0;  // kConst payload
    int arg = 0;       // kVar slot / kPow exponent
  };

 private:
  friend Expression parse_expression(std::string_view, const VariableMap&);
  std::vector<Op> ops_;  // postfix program
  std::string text_;
};

// throws config_error on any lexical or syntactic violation
Expression parse_expression(std::string_view text, const VariableMap& vars);

}  // namespace kmns
