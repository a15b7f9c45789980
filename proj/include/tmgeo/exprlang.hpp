#pragma once

#include "tmgeo/jet.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmgeo {

// Error raised while parsing or evaluating an expression.  `offset` is the
// byte position in the source string the problem was detected at.
struct ExprError : std::runtime_error {
    size_t offset;
    ExprError(const std::string& msg, size_t off) : std::runtime_error(msg), offset(off) {}
};

struct ParseError : ExprError {
    using ExprError::ExprError;
};

struct EvalError : ExprError {
    using ExprError::ExprError;
};

enum class NodeKind { Num, Const, Var, Add, Sub, Mul, Div, Pow, Neg, Fun };

struct ExprNode {
    NodeKind kind;
    double num = 0.0; // Num / Const value
    int name = -1;    // Var: variable index; Const/Fun: table index
    int a = -1;       // child indices into the arena
    int b = -1;
    size_t pos = 0;   // byte offset of the token this node came from
};

// A parsed scalar expression over named real variables.  Nodes live in a flat
// arena; `root` indexes the top node.
class Expr {
public:
    Expr() = default;

    double eval(const Vec& x) const;
    Jet2 eval_jet(const Vec& x) const;
    std::string print() const;

    const std::vector<std::string>& variables() const { return vars_; }
    const std::string& source() const { return src_; }

private:
    std::vector<ExprNode> nodes_;
    int root_ = -1;
    std::vector<std::string> vars_;
    std::string src_;

    friend Expr parse_expr(const std::string&, const std::vector<std::string>&);

    double eval_node(int id, const Vec& x) const;
    Jet2 jet_node(int id, const Vec& x) const;
    void print_node(int id, std::string& out) const;
};

// Parses `src` over the given variable names.  Throws ParseError on syntax
// errors or unknown identifiers.
Expr parse_expr(const std::string& src, const std::vector<std::string>& vars);

// Convenience: variables named x1..xm.
Expr parse_expr(const std::string& src, int m);

std::vector<std::string> coordinate_names(int m);

} // namespace tmgeo
