#include "poissonlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace poissonlab {

SyntaxError::SyntaxError(const std::string& msg, int line, int column)
    : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    enum Type { Int, Ident, Op, End } type;
    std::string text;
    int line, column;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int l = line, cl = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && (src[j] == '.' || src[j] == 'e' || src[j] == 'E')) {
                int ecol = cl + static_cast<int>(j - i);
                throw SyntaxError("decimal literals are not accepted; use a fraction like 3/2", l, ecol);
            }
            out.push_back({Token::Int, src.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Token::Ident, src.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (std::string("+-*/^()@~").find(c) != std::string::npos) {
            out.push_back({Token::Op, std::string(1, c), l, cl});
            advance(1);
        } else if (c == '.') {
            throw SyntaxError("decimal literals are not accepted; use a fraction like 3/2", l, cl);
        } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    ExprPtr parse() {
        ExprPtr e = wedge();
        if (peek().type != Token::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    std::vector<Token> t_;
    std::size_t p_ = 0;

    const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
    bool is_op(const std::string& s, std::size_t k = 0) const {
        return peek(k).type == Token::Op && peek(k).text == s;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& tk = peek();
        throw SyntaxError(tk.type == Token::End ? "unexpected end of input" : msg, tk.line, tk.column);
    }
    static ExprPtr node(Expr::Kind k, const Token& at, std::vector<ExprPtr> args = {}, std::string text = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args = std::move(args);
        e->text = std::move(text);
        e->line = at.line;
        e->column = at.column;
        return e;
    }
    bool power_follows() const {
        if (!is_op("^")) return false;
        if (peek(1).type == Token::Int) return true;
        return is_op("-", 1) && peek(2).type == Token::Int;
    }

    ExprPtr wedge() {
        ExprPtr e = sum();
        while (is_op("^")) {
            Token at = peek();
            ++p_;
            e = node(Expr::Kind::Wedge, at, {e, sum()});
        }
        return e;
    }
    ExprPtr sum() {
        ExprPtr e = product();
        while (is_op("+") || is_op("-")) {
            Token at = peek();
            ++p_;
            e = node(at.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, at, {e, product()});
        }
        return e;
    }
    ExprPtr product() {
        ExprPtr e = unary();
        while (is_op("*") || is_op("/")) {
            Token at = peek();
            ++p_;
            e = node(at.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, at, {e, unary()});
        }
        return e;
    }
    ExprPtr unary() {
        if (is_op("-")) {
            Token at = peek();
            ++p_;
            return node(Expr::Kind::Neg, at, {unary()});
        }
        if (is_op("+")) {
            ++p_;
            return unary();
        }
        return power();
    }
    ExprPtr power() {
        ExprPtr base = atom();
        if (power_follows()) {
            Token at = peek();
            ++p_;
            bool neg = false;
            if (is_op("-")) {
                neg = true;
                ++p_;
            }
            const Token& n = peek();
            ++p_;
            if (n.text.size() > 6) throw SyntaxError("exponent too large", n.line, n.column);
            auto e = std::make_shared<Expr>(*node(Expr::Kind::Pow, at, {base}));
            e->exponent = std::stoi(n.text) * (neg ? -1 : 1);
            if (power_follows()) fail("ambiguous repeated power; add parentheses");
            return e;
        }
        return base;
    }
    ExprPtr atom() {
        const Token tk = peek();
        if (tk.type == Token::Int) {
            ++p_;
            return node(Expr::Kind::Integer, tk, {}, tk.text);
        }
        if (tk.type == Token::Ident) {
            ++p_;
            if (tk.text == "i") return node(Expr::Kind::ImagUnit, tk);
            return node(Expr::Kind::Symbol, tk, {}, tk.text);
        }
        if (is_op("@") || is_op("~")) {
            ++p_;
            const Token& id = peek();
            if (id.type != Token::Ident) fail("expected a coordinate name after '" + tk.text + "'");
            ++p_;
            return node(tk.text == "@" ? Expr::Kind::Vector : Expr::Kind::AntiHol, tk, {}, id.text);
        }
        if (is_op("(")) {
            ++p_;
            ExprPtr e = wedge();
            if (!is_op(")")) fail("expected ')'");
            ++p_;
            return e;
        }
        fail("unexpected '" + tk.text + "'");
    }
};

bool is_reserved(const std::string& s) {
    auto& r = reserved_chart_names();
    return std::find(r.begin(), r.end(), s) != r.end();
}

void collect_symbols(const ExprPtr& e, std::set<std::string>& out) {
    if (e->kind == Expr::Kind::Symbol || e->kind == Expr::Kind::Vector || e->kind == Expr::Kind::AntiHol)
        out.insert(e->text);
    for (auto& a : e->args) collect_symbols(a, out);
}

std::string where(const Expr& e) {
    return " (line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ")";
}

int chart_index(const Chart& c, const Expr& e) {
    int k = c.index_of(intern(e.text));
    if (k < 0) throw UnknownSymbol("'" + e.text + "' is not a coordinate of chart " + c.name + where(e));
    return k;
}

// The value as a plain function, if it is one.
bool as_function(const FormedMultiVector& f, LaurentPoly& out) {
    if (f.is_zero()) {
        out = LaurentPoly();
        return true;
    }
    if (f.parts().size() != 1 || !f.parts().begin()->first.empty()) return false;
    const MultiVector& mv = f.parts().begin()->second;
    if (mv.components().size() != 1 || !mv.components().begin()->first.empty()) return false;
    out = mv.components().begin()->second;
    return true;
}

FormedMultiVector function_value(const Chart& c, const LaurentPoly& p) {
    return FormedMultiVector(MultiVector::function(c, p));
}

}  // namespace

const std::vector<std::string>& reserved_chart_names() {
    static const std::vector<std::string> names = {"z", "w", "z1", "z2", "z3", "z4", "xi", "zp", "wp", "xip"};
    return names;
}

ExprPtr parse_expr(const std::string& src) { return Parser(lex(src)).parse(); }

Chart infer_chart(const std::vector<std::string>& sources, const std::string& name) {
    std::set<std::string> seen;
    for (auto& s : sources) collect_symbols(parse_expr(s), seen);
    std::vector<std::string> vars;
    for (auto& r : reserved_chart_names())
        if (seen.count(r)) vars.push_back(r);
    return Chart(name, vars);
}

FormedMultiVector eval_expr(const ExprPtr& e, const Chart& c) {
    using K = Expr::Kind;
    switch (e->kind) {
        case K::Integer:
            return function_value(c, LaurentPoly(GaussianRational::parse(e->text)));
        case K::ImagUnit:
            return function_value(c, LaurentPoly(GaussianRational::i()));
        case K::Symbol: {
            Var v = intern(e->text);
            if (c.index_of(v) < 0 && is_reserved(e->text))
                throw UnknownSymbol("'" + e->text + "' is a coordinate name but not part of chart " + c.name +
                                    where(*e));
            return function_value(c, LaurentPoly::var(v));
        }
        case K::Vector:
            return FormedMultiVector(MultiVector::term(c, {chart_index(c, *e)}, 1));
        case K::AntiHol:
            return FormedMultiVector(MultiVector::function(c, 1), {chart_index(c, *e)});
        case K::Neg:
            return -eval_expr(e->args[0], c);
        case K::Add:
            return eval_expr(e->args[0], c) + eval_expr(e->args[1], c);
        case K::Sub:
            return eval_expr(e->args[0], c) - eval_expr(e->args[1], c);
        case K::Mul:
        case K::Wedge:
            return wedge(eval_expr(e->args[0], c), eval_expr(e->args[1], c));
        case K::Div: {
            LaurentPoly d;
            if (!as_function(eval_expr(e->args[1], c), d) || !d.is_monomial())
                throw SyntaxError("can only divide by a nonzero scalar or monomial", e->line, e->column);
            return d.pow(-1) * eval_expr(e->args[0], c);
        }
        case K::Pow: {
            LaurentPoly b;
            if (!as_function(eval_expr(e->args[0], c), b))
                throw SyntaxError("only functions can be raised to a power", e->line, e->column);
            if (e->exponent < 0 && !b.is_monomial())
                throw SyntaxError("negative powers need a nonzero scalar or monomial base", e->line, e->column);
            return function_value(c, b.pow(e->exponent));
        }
    }
    throw std::logic_error("unreachable");
}

FormedMultiVector parse_field(const std::string& src, const Chart& chart) {
    return eval_expr(parse_expr(src), chart);
}

FormedMultiVector parse_field(const std::string& src) { return parse_field(src, infer_chart({src})); }

LaurentPoly parse_poly(const std::string& src, const Chart& chart) {
    LaurentPoly p;
    if (!as_function(parse_field(src, chart), p)) throw SyntaxError("expected a function, got a field", 1, 1);
    return p;
}

LaurentPoly parse_poly(const std::string& src) { return parse_poly(src, infer_chart({src})); }

std::string print_field(const FormedMultiVector& f) { return f.str(); }
std::string print_field(const MultiVector& m) { return m.str(); }

}  // namespace poissonlab
