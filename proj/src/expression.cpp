#include "plfilter/expression.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

#include "plfilter/errors.hpp"

namespace plf {

namespace {

struct Node {
    enum class Kind { constant, variable, unary, binary, call2 } kind;
    double value = 0.0;                    // constant
    std::size_t index = 0;                 // variable
    char op = 0;                           // unary/binary operator
    double (*fn1)(double) = nullptr;       // unary call
    double (*fn2)(double, double) = nullptr; // binary call
    std::unique_ptr<Node> lhs, rhs;
};

double eval_node(const Node& n, const Vec& x) {
    switch (n.kind) {
        case Node::Kind::constant: return n.value;
        case Node::Kind::variable: return x[n.index];
        case Node::Kind::unary: {
            const double v = eval_node(*n.lhs, x);
            if (n.fn1) return n.fn1(v);
            return n.op == '-' ? -v : v;
        }
        case Node::Kind::binary: {
            const double a = eval_node(*n.lhs, x);
            const double b = eval_node(*n.rhs, x);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            return 0.0;
        }
        case Node::Kind::call2:
            return n.fn2(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
    }
    return 0.0;
}

class Parser {
public:
    Parser(const std::string& text, std::size_t dim) : text_(text), dim_(dim) {}

    std::unique_ptr<Node> parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw input_error("expression: unexpected trailing input at '" + text_.substr(pos_) + "'");
        return e;
    }

private:
    const std::string& text_;
    std::size_t dim_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw input_error(std::string("expression: expected '") + c + "'");
    }

    std::unique_ptr<Node> expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) lhs = binary('+', std::move(lhs), term());
            else if (accept('-')) lhs = binary('-', std::move(lhs), term());
            else return lhs;
        }
    }

    std::unique_ptr<Node> term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) lhs = binary('*', std::move(lhs), unary());
            else if (accept('/')) lhs = binary('/', std::move(lhs), unary());
            else return lhs;
        }
    }

    std::unique_ptr<Node> unary() {
        if (accept('-')) {
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::unary;
            n->op = '-';
            n->lhs = unary();
            return n;
        }
        if (accept('+')) return unary();
        return power();
    }

    std::unique_ptr<Node> power() {
        auto base = primary();
        if (accept('^')) return binary('^', std::move(base), unary()); // right associative
        return base;
    }

    static std::unique_ptr<Node> binary(char op, std::unique_ptr<Node> a, std::unique_ptr<Node> b) {
        auto n = std::make_unique<Node>();
        n->kind = Node::Kind::binary;
        n->op = op;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    std::unique_ptr<Node> primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw input_error("expression: unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        throw input_error(std::string("expression: unexpected character '") + c + "'");
    }

    std::unique_ptr<Node> number() {
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
                text_[end] == 'e' || text_[end] == 'E' ||
                ((text_[end] == '+' || text_[end] == '-') && end > pos_ &&
                 (text_[end - 1] == 'e' || text_[end - 1] == 'E'))))
            ++end;
        auto n = std::make_unique<Node>();
        n->kind = Node::Kind::constant;
        try {
            n->value = std::stod(text_.substr(pos_, end - pos_));
        } catch (const std::exception&) {
            throw input_error("expression: bad numeric literal");
        }
        pos_ = end;
        return n;
    }

    std::unique_ptr<Node> identifier() {
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            ++end;
        const std::string name = text_.substr(pos_, end - pos_);
        pos_ = end;

        if (name.size() >= 2 && name[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
            if (digits) {
                const std::size_t idx = std::stoul(name.substr(1));
                if (idx < 1 || idx > dim_)
                    throw input_error("expression: variable " + name + " outside x1..x" +
                                      std::to_string(dim_));
                auto n = std::make_unique<Node>();
                n->kind = Node::Kind::variable;
                n->index = idx - 1;
                return n;
            }
        }
        if (name == "pi") {
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::constant;
            n->value = 3.14159265358979323846;
            return n;
        }

        struct Fn1 { const char* name; double (*fn)(double); };
        static const Fn1 fns1[] = {{"sin", std::sin}, {"cos", std::cos}, {"tan", std::tan},
                                   {"exp", std::exp}, {"log", std::log}, {"sqrt", std::sqrt},
                                   {"abs", std::fabs}};
        for (const auto& f : fns1) {
            if (name == f.name) {
                expect('(');
                auto arg = expr();
                expect(')');
                auto n = std::make_unique<Node>();
                n->kind = Node::Kind::unary;
                n->fn1 = f.fn;
                n->lhs = std::move(arg);
                return n;
            }
        }
        struct Fn2 { const char* name; double (*fn)(double, double); };
        static const Fn2 fns2[] = {{"pow", std::pow}, {"min", std::fmin}, {"max", std::fmax}};
        for (const auto& f : fns2) {
            if (name == f.name) {
                expect('(');
                auto a = expr();
                expect(',');
                auto b = expr();
                expect(')');
                auto n = std::make_unique<Node>();
                n->kind = Node::Kind::call2;
                n->fn2 = f.fn;
                n->lhs = std::move(a);
                n->rhs = std::move(b);
                return n;
            }
        }
        throw input_error("expression: unknown identifier '" + name + "'");
    }
};

} // namespace

std::function<double(const Vec&)> compile_expression(const std::string& text, std::size_t dimension) {
    Parser parser(text, dimension);
    std::shared_ptr<Node> root(parser.parse().release());
    return [root, dimension](const Vec& x) {
        if (x.size() != dimension) throw input_error("expression evaluator: dimension mismatch");
        return eval_node(*root, x);
    };
}

} // namespace plf
