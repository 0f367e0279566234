#include "projkit/expr.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "projkit/error.hpp"

namespace projkit {

ExprPtr make_literal(const Rational &value) { return std::make_shared<Expr>(Expr{ast::Literal{value}}); }

ExprPtr make_variable(char name) { return std::make_shared<Expr>(Expr{ast::Variable{name}}); }

ExprPtr make_parameter(std::string name)
{
    return std::make_shared<Expr>(Expr{ast::Parameter{std::move(name)}});
}

ExprPtr make_negate(ExprPtr operand)
{
    if (const auto *lit = std::get_if<ast::Literal>(&operand->node)) {
        return make_literal(-lit->value);
    }
    return std::make_shared<Expr>(Expr{ast::Negate{std::move(operand)}});
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs)
{
    return std::make_shared<Expr>(Expr{ast::Binary{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr make_power(ExprPtr base, const Rational &exponent)
{
    return std::make_shared<Expr>(Expr{ast::Power{std::move(base), exponent}});
}

ExprPtr make_apply(Function function, ExprPtr argument)
{
    return std::make_shared<Expr>(Expr{ast::Apply{function, std::move(argument)}});
}

bool equal(const Expr &a, const Expr &b)
{
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&](const auto &na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto &nb = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, ast::Literal>) {
                return na.value == nb.value;
            } else if constexpr (std::is_same_v<T, ast::Variable>) {
                return na.name == nb.name;
            } else if constexpr (std::is_same_v<T, ast::Parameter>) {
                return na.name == nb.name;
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                return equal(*na.operand, *nb.operand);
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                return na.op == nb.op && equal(*na.lhs, *nb.lhs) && equal(*na.rhs, *nb.rhs);
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                return na.exponent == nb.exponent && equal(*na.base, *nb.base);
            } else {
                return na.function == nb.function && equal(*na.argument, *nb.argument);
            }
        },
        a.node);
}

namespace {

enum class Tok { Number, Ident, Op, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            out.push_back({Tok::Number, std::string(text.substr(start, i - start)), start});
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const std::size_t start = i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                ++i;
            }
            out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
        } else if (ch == '+' || ch == '-' || ch == '*' || ch == '/' || ch == '^') {
            out.push_back({Tok::Op, std::string(1, ch), i});
            ++i;
        } else if (ch == '(') {
            out.push_back({Tok::LParen, "(", i++});
        } else if (ch == ')') {
            out.push_back({Tok::RParen, ")", i++});
        } else {
            throw SyntaxError(i, std::string("unexpected character '") + ch + "'");
        }
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

// Binding powers.
constexpr int kSum = 10;
constexpr int kProduct = 20;
constexpr int kUnary = 30;
constexpr int kPower = 40;

int infix_power(const Token &t)
{
    if (t.kind != Tok::Op) {
        return -1;
    }
    switch (t.text[0]) {
    case '+':
    case '-': return kSum;
    case '*':
    case '/': return kProduct;
    case '^': return kPower;
    default: return -1;
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    ExprPtr parse_all()
    {
        ExprPtr e = parse_expression(0);
        if (peek().kind != Tok::End) {
            throw SyntaxError(peek().offset, "unexpected '" + peek().text + "'");
        }
        return e;
    }

private:
    const Token &peek() const { return tokens_[pos_]; }
    const Token &next() { return tokens_[pos_++]; }

    ExprPtr parse_expression(int min_power)
    {
        ExprPtr lhs = parse_prefix();
        for (;;) {
            const Token &op = peek();
            const int power = infix_power(op);
            if (power <= min_power) {
                break;
            }
            next();
            if (op.text[0] == '^') {
                lhs = make_power(std::move(lhs), parse_exponent(op.offset));
                continue;
            }
            ExprPtr rhs = parse_expression(power);
            if (op.text[0] == '/') {
                const auto *a = std::get_if<ast::Literal>(&lhs->node);
                const auto *b = std::get_if<ast::Literal>(&rhs->node);
                if (a != nullptr && b != nullptr) {
                    if (sgn(b->value) == 0) {
                        throw SyntaxError(op.offset, "division by zero");
                    }
                    lhs = make_literal(a->value / b->value);
                    continue;
                }
            }
            lhs = make_binary(op.text[0], std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Rational parse_exponent(std::size_t caret_offset)
    {
        const std::size_t at = peek().offset;
        if (peek().kind == Tok::End) {
            throw SyntaxError(caret_offset, "missing exponent");
        }
        ExprPtr e = parse_expression(kPower - 1);
        const auto *lit = std::get_if<ast::Literal>(&e->node);
        if (lit == nullptr) {
            throw SyntaxError(at, "exponent must be a rational literal");
        }
        return lit->value;
    }

    ExprPtr parse_prefix()
    {
        const Token &t = next();
        switch (t.kind) {
        case Tok::Number: return make_literal(Rational(Integer(t.text, 10)));
        case Tok::Ident: return parse_identifier(t);
        case Tok::LParen: {
            ExprPtr inner = parse_expression(0);
            expect_rparen(t.offset);
            return inner;
        }
        case Tok::Op:
            if (t.text[0] == '-') {
                return make_negate(parse_expression(kUnary));
            }
            throw SyntaxError(t.offset, "unexpected operator '" + t.text + "'");
        case Tok::RParen: throw SyntaxError(t.offset, "unexpected ')'");
        case Tok::End: throw SyntaxError(t.offset, "unexpected end of input");
        }
        throw SyntaxError(t.offset, "unexpected token");
    }

    ExprPtr parse_identifier(const Token &t)
    {
        if (t.text == "x" || t.text == "y") {
            return make_variable(t.text[0]);
        }
        if (t.text == "exp" || t.text == "sqrt") {
            const Token &open = next();
            if (open.kind != Tok::LParen) {
                throw SyntaxError(open.offset, "expected '(' after " + t.text);
            }
            ExprPtr arg = parse_expression(0);
            expect_rparen(open.offset);
            return make_apply(t.text == "exp" ? Function::Exp : Function::Sqrt, std::move(arg));
        }
        if (peek().kind == Tok::LParen) {
            throw SyntaxError(t.offset, "unknown function '" + t.text + "'");
        }
        return make_parameter(t.text);
    }

    void expect_rparen(std::size_t open_offset)
    {
        if (peek().kind != Tok::RParen) {
            if (peek().kind == Tok::End) {
                throw SyntaxError(open_offset, "unbalanced '('");
            }
            throw SyntaxError(peek().offset, "expected ')'");
        }
        next();
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Printing precedence of a node; literals print like the construct that
// would re-parse into them.
int precedence(const Expr &e)
{
    return std::visit(
        [](const auto &n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ast::Literal>) {
                if (n.value.get_den() != 1) {
                    return kProduct;
                }
                return sgn(n.value) < 0 ? kUnary : 50;
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                return kUnary;
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                return (n.op == '+' || n.op == '-') ? kSum : kProduct;
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                return kPower;
            } else {
                return 50;
            }
        },
        e.node);
}

std::string wrap(const Expr &e, bool parens)
{
    return parens ? "(" + print(e) + ")" : print(e);
}

} // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr &e)
{
    return std::visit(
        [](const auto &n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ast::Literal>) {
                return to_string(n.value);
            } else if constexpr (std::is_same_v<T, ast::Variable>) {
                return std::string(1, n.name);
            } else if constexpr (std::is_same_v<T, ast::Parameter>) {
                return n.name;
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                return "-" + wrap(*n.operand, precedence(*n.operand) < kUnary);
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                const int p = (n.op == '+' || n.op == '-') ? kSum : kProduct;
                const std::string sep = p == kSum ? std::string(" ") + n.op + " " : std::string(1, n.op);
                return wrap(*n.lhs, precedence(*n.lhs) < p) + sep + wrap(*n.rhs, precedence(*n.rhs) <= p);
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                const bool plain = n.exponent.get_den() == 1 && sgn(n.exponent) >= 0;
                const std::string exponent = plain ? to_string(n.exponent) : "(" + to_string(n.exponent) + ")";
                return wrap(*n.base, precedence(*n.base) <= kPower) + "^" + exponent;
            } else {
                return std::string(n.function == Function::Exp ? "exp" : "sqrt") + "(" + print(*n.argument) + ")";
            }
        },
        e.node);
}

std::set<std::string> parameters(const Expr &e)
{
    std::set<std::string> out;
    std::visit(
        [&](const auto &n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ast::Parameter>) {
                out.insert(n.name);
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                out.merge(parameters(*n.operand));
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                out.merge(parameters(*n.lhs));
                out.merge(parameters(*n.rhs));
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                out.merge(parameters(*n.base));
            } else if constexpr (std::is_same_v<T, ast::Apply>) {
                out.merge(parameters(*n.argument));
            }
        },
        e.node);
    return out;
}

Jet2 expand(const Expr &e, const ParamEnv &env, int order)
{
    return std::visit(
        [&](const auto &n) -> Jet2 {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ast::Literal>) {
                return Jet2::constant(n.value, order);
            } else if constexpr (std::is_same_v<T, ast::Variable>) {
                return n.name == 'x' ? Jet2::x(order) : Jet2::y(order);
            } else if constexpr (std::is_same_v<T, ast::Parameter>) {
                const auto it = env.find(n.name);
                if (it == env.end()) {
                    throw Error(ErrorKind::UnboundParameter, "parameter '" + n.name + "' is not bound");
                }
                return Jet2::constant(it->second, order);
            } else if constexpr (std::is_same_v<T, ast::Negate>) {
                return -expand(*n.operand, env, order);
            } else if constexpr (std::is_same_v<T, ast::Binary>) {
                Jet2 lhs = expand(*n.lhs, env, order);
                const Jet2 rhs = expand(*n.rhs, env, order);
                switch (n.op) {
                case '+': return lhs + rhs;
                case '-': return lhs - rhs;
                case '*': return lhs * rhs;
                default: return lhs / rhs;
                }
            } else if constexpr (std::is_same_v<T, ast::Power>) {
                const Integer &den = n.exponent.get_den();
                if (den != 1 && den != 2) {
                    throw Error(ErrorKind::UnsupportedExponent,
                                "exponent " + to_string(n.exponent) + " has denominator other than 1 or 2");
                }
                Jet2 base = expand(*n.base, env, order);
                if (den == 2) {
                    base = sqrt_series(base);
                }
                return pow(base, n.exponent.get_num().get_si());
            } else {
                const Jet2 arg = expand(*n.argument, env, order);
                return n.function == Function::Exp ? exp_series(arg) : sqrt_series(arg);
            }
        },
        e.node);
}

Jet2 expand(std::string_view text, const ParamEnv &env, int order) { return expand(*parse(text), env, order); }

} // namespace projkit
