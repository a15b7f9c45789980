#include "tmgeo/exprlang.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace tmgeo {

namespace {

struct FunEntry {
    const char* name;
    double (*f)(double);
    Jet2 (*fj)(const Jet2&);
};

const std::array<FunEntry, 10> kFunctions = {{
    {"sin", [](double x) { return std::sin(x); }, [](const Jet2& a) { return sin(a); }},
    {"cos", [](double x) { return std::cos(x); }, [](const Jet2& a) { return cos(a); }},
    {"tan", [](double x) { return std::tan(x); }, [](const Jet2& a) { return tan(a); }},
    {"exp", [](double x) { return std::exp(x); }, [](const Jet2& a) { return exp(a); }},
    {"log", [](double x) { return std::log(x); }, [](const Jet2& a) { return log(a); }},
    {"sqrt", [](double x) { return std::sqrt(x); }, [](const Jet2& a) { return sqrt(a); }},
    {"sinh", [](double x) { return std::sinh(x); }, [](const Jet2& a) { return sinh(a); }},
    {"cosh", [](double x) { return std::cosh(x); }, [](const Jet2& a) { return cosh(a); }},
    {"tanh", [](double x) { return std::tanh(x); }, [](const Jet2& a) { return tanh(a); }},
    {"atan", [](double x) { return std::atan(x); }, [](const Jet2& a) { return atan(a); }},
}};

const std::array<std::pair<const char*, double>, 2> kConstants = {{
    {"pi", 3.14159265358979323846},
    {"e", 2.71828182845904523536},
}};

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    size_t pos;
    size_t len;
    double num = 0.0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

    std::string text(const Token& t) const { return src_.substr(t.pos, t.len); }

private:
    const std::string& src_;
    size_t i_ = 0;
    Token cur_;

    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) i_++;
        cur_.pos = i_;
        cur_.len = 1;
        if (i_ >= src_.size()) {
            cur_.kind = Tok::End;
            cur_.len = 0;
            return;
        }
        char c = src_[i_];
        switch (c) {
            case '+': cur_.kind = Tok::Plus; i_++; return;
            case '-': cur_.kind = Tok::Minus; i_++; return;
            case '*': cur_.kind = Tok::Star; i_++; return;
            case '/': cur_.kind = Tok::Slash; i_++; return;
            case '^': cur_.kind = Tok::Caret; i_++; return;
            case '(': cur_.kind = Tok::LParen; i_++; return;
            case ')': cur_.kind = Tok::RParen; i_++; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.c_str() + i_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin)
                throw ParseError("malformed number", i_);
            cur_.kind = Tok::Num;
            cur_.num = v;
            cur_.len = static_cast<size_t>(end - begin);
            i_ += cur_.len;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                j++;
            cur_.kind = Tok::Ident;
            cur_.len = j - i_;
            i_ = j;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
};

class Parser {
public:
    Parser(const std::string& src, const std::vector<std::string>& vars,
           std::vector<ExprNode>& nodes)
        : lex_(src), vars_(vars), nodes_(nodes) {}

    int parse() {
        int id = expr();
        if (lex_.peek().kind != Tok::End)
            throw ParseError("unexpected trailing input", lex_.peek().pos);
        return id;
    }

private:
    Lexer lex_;
    const std::vector<std::string>& vars_;
    std::vector<ExprNode>& nodes_;

    int make(NodeKind kind, size_t pos, int a = -1, int b = -1) {
        ExprNode n;
        n.kind = kind;
        n.pos = pos;
        n.a = a;
        n.b = b;
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    int expr() {
        int left = term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Token op = lex_.take();
            int right = term();
            left = make(op.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub, op.pos, left, right);
        }
        return left;
    }

    int term() {
        int left = factor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            Token op = lex_.take();
            int right = factor();
            left = make(op.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div, op.pos, left, right);
        }
        return left;
    }

    int factor() {
        if (lex_.peek().kind == Tok::Minus) {
            Token op = lex_.take();
            int inner = factor();
            return make(NodeKind::Neg, op.pos, inner);
        }
        return power();
    }

    int power() {
        int base = atom();
        if (lex_.peek().kind == Tok::Caret) {
            Token op = lex_.take();
            int exponent = factor();
            return make(NodeKind::Pow, op.pos, base, exponent);
        }
        return base;
    }

    int atom() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Num: {
                lex_.take();
                int id = make(NodeKind::Num, t.pos);
                nodes_[id].num = t.num;
                return id;
            }
            case Tok::LParen: {
                lex_.take();
                int inner = expr();
                if (lex_.peek().kind != Tok::RParen)
                    throw ParseError("expected ')'", lex_.peek().pos);
                lex_.take();
                return inner;
            }
            case Tok::Ident: {
                lex_.take();
                std::string name = lex_.text(t);
                if (lex_.peek().kind == Tok::LParen) {
                    for (size_t f = 0; f < kFunctions.size(); f++) {
                        if (name == kFunctions[f].name) {
                            lex_.take();
                            int arg = expr();
                            if (lex_.peek().kind != Tok::RParen)
                                throw ParseError("expected ')'", lex_.peek().pos);
                            lex_.take();
                            int id = make(NodeKind::Fun, t.pos, arg);
                            nodes_[id].name = static_cast<int>(f);
                            return id;
                        }
                    }
                    throw ParseError("unknown function '" + name + "'", t.pos);
                }
                for (size_t v = 0; v < vars_.size(); v++) {
                    if (name == vars_[v]) {
                        int id = make(NodeKind::Var, t.pos);
                        nodes_[id].name = static_cast<int>(v);
                        return id;
                    }
                }
                for (size_t c = 0; c < kConstants.size(); c++) {
                    if (name == kConstants[c].first) {
                        int id = make(NodeKind::Const, t.pos);
                        nodes_[id].name = static_cast<int>(c);
                        nodes_[id].num = kConstants[c].second;
                        return id;
                    }
                }
                throw ParseError("unknown identifier '" + name + "'", t.pos);
            }
            case Tok::End:
                throw ParseError("unexpected end of expression", t.pos);
            default:
                throw ParseError("unexpected token", t.pos);
        }
    }
};

bool integral_exponent(const ExprNode& n, long long& out) {
    if (n.kind != NodeKind::Num) return false;
    if (std::abs(n.num) > 1e15 || n.num != std::floor(n.num)) return false;
    out = static_cast<long long>(n.num);
    return true;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Expr parse_expr(const std::string& src, const std::vector<std::string>& vars) {
    Expr e;
    e.src_ = src;
    e.vars_ = vars;
    Parser p(src, vars, e.nodes_);
    e.root_ = p.parse();
    return e;
}

Expr parse_expr(const std::string& src, int m) {
    return parse_expr(src, coordinate_names(m));
}

std::vector<std::string> coordinate_names(int m) {
    std::vector<std::string> names;
    names.reserve(m);
    for (int i = 1; i <= m; i++) names.push_back("x" + std::to_string(i));
    return names;
}

double Expr::eval(const Vec& x) const { return eval_node(root_, x); }

Jet2 Expr::eval_jet(const Vec& x) const { return jet_node(root_, x); }

double Expr::eval_node(int id, const Vec& x) const {
    const ExprNode& n = nodes_[id];
    switch (n.kind) {
        case NodeKind::Num:
        case NodeKind::Const:
            return n.num;
        case NodeKind::Var:
            return x(n.name);
        case NodeKind::Add:
            return eval_node(n.a, x) + eval_node(n.b, x);
        case NodeKind::Sub:
            return eval_node(n.a, x) - eval_node(n.b, x);
        case NodeKind::Mul:
            return eval_node(n.a, x) * eval_node(n.b, x);
        case NodeKind::Div: {
            double d = eval_node(n.b, x);
            if (d == 0.0) throw EvalError("division by zero", n.pos);
            return eval_node(n.a, x) / d;
        }
        case NodeKind::Neg:
            return -eval_node(n.a, x);
        case NodeKind::Pow: {
            double base = eval_node(n.a, x);
            long long k;
            if (integral_exponent(nodes_[n.b], k)) {
                if (base == 0.0 && k < 0) throw EvalError("zero raised to a negative power", n.pos);
                return std::pow(base, static_cast<double>(k));
            }
            double ex = eval_node(n.b, x);
            if (base <= 0.0)
                throw EvalError("non-integer power of a non-positive base", n.pos);
            return std::pow(base, ex);
        }
        case NodeKind::Fun: {
            double a = eval_node(n.a, x);
            if (n.name == 4 && a <= 0.0) throw EvalError("log of a non-positive value", n.pos);
            if (n.name == 5 && a < 0.0) throw EvalError("sqrt of a negative value", n.pos);
            return kFunctions[n.name].f(a);
        }
    }
    throw EvalError("corrupt expression node", n.pos);
}

Jet2 Expr::jet_node(int id, const Vec& x) const {
    const ExprNode& n = nodes_[id];
    const int m = static_cast<int>(x.size());
    switch (n.kind) {
        case NodeKind::Num:
        case NodeKind::Const:
            return Jet2::constant(n.num, m);
        case NodeKind::Var:
            return Jet2::variable(x(n.name), n.name, m);
        case NodeKind::Add:
            return jet_node(n.a, x) + jet_node(n.b, x);
        case NodeKind::Sub:
            return jet_node(n.a, x) - jet_node(n.b, x);
        case NodeKind::Mul:
            return jet_node(n.a, x) * jet_node(n.b, x);
        case NodeKind::Div: {
            Jet2 d = jet_node(n.b, x);
            if (d.v == 0.0) throw EvalError("division by zero", n.pos);
            return jet_node(n.a, x) / d;
        }
        case NodeKind::Neg:
            return -jet_node(n.a, x);
        case NodeKind::Pow: {
            Jet2 base = jet_node(n.a, x);
            long long k;
            if (integral_exponent(nodes_[n.b], k)) {
                if (base.v == 0.0 && k < 0) throw EvalError("zero raised to a negative power", n.pos);
                return powi(base, k);
            }
            Jet2 ex = jet_node(n.b, x);
            if (base.v <= 0.0)
                throw EvalError("non-integer power of a non-positive base", n.pos);
            return exp(ex * log(base));
        }
        case NodeKind::Fun: {
            Jet2 a = jet_node(n.a, x);
            if (n.name == 4 && a.v <= 0.0) throw EvalError("log of a non-positive value", n.pos);
            if (n.name == 5 && a.v < 0.0) throw EvalError("sqrt of a negative value", n.pos);
            return kFunctions[n.name].fj(a);
        }
    }
    throw EvalError("corrupt expression node", n.pos);
}

std::string Expr::print() const {
    std::string out;
    print_node(root_, out);
    return out;
}

// Fully parenthesized printing: cheap to produce and unambiguous, which is
// all the round-trip guarantee needs.
void Expr::print_node(int id, std::string& out) const {
    const ExprNode& n = nodes_[id];
    switch (n.kind) {
        case NodeKind::Num:
            out += format_number(n.num);
            return;
        case NodeKind::Const:
            out += kConstants[n.name].first;
            return;
        case NodeKind::Var:
            out += vars_[n.name];
            return;
        case NodeKind::Neg:
            out += "(-";
            print_node(n.a, out);
            out += ")";
            return;
        case NodeKind::Fun:
            out += kFunctions[n.name].name;
            out += "(";
            print_node(n.a, out);
            out += ")";
            return;
        default:
            break;
    }
    const char* op = "?";
    switch (n.kind) {
        case NodeKind::Add: op = " + "; break;
        case NodeKind::Sub: op = " - "; break;
        case NodeKind::Mul: op = " * "; break;
        case NodeKind::Div: op = " / "; break;
        case NodeKind::Pow: op = "^"; break;
        default: break;
    }
    out += "(";
    print_node(n.a, out);
    out += op;
    print_node(n.b, out);
    out += ")";
}

} // namespace tmgeo
