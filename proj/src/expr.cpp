#include "qpb/expr.hpp"

#include <cctype>

namespace qpb {

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    void skipWs() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skipWs();
        return pos >= text.size();
    }
    char peek() {
        skipWs();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skipWs();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos + 1);
    }
    long integer() {
        skipWs();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) throw ParseError("expected integer", start + 1);
        return std::stol(text.substr(start, pos - start));
    }

    ExprPtr expr() {
        ExprPtr left = term();
        while (true) {
            if (accept('+')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::Add;
                n->children = {left, term()};
                left = n;
            } else if (accept('-')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::Sub;
                n->children = {left, term()};
                left = n;
            } else {
                return left;
            }
        }
    }

    ExprPtr term() {
        ExprPtr left = factor();
        while (true) {
            if (accept('*')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::Mul;
                n->children = {left, factor()};
                left = n;
            } else if (accept('/')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::Div;
                n->children = {left, factor()};
                left = n;
            } else {
                return left;
            }
        }
    }

    ExprPtr factor() {
        if (accept('-')) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Neg;
            n->children = {factor()};
            return n;
        }
        ExprPtr a = atom();
        skipWs();
        if (accept('^')) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Pow;
            n->children = {a};
            if (accept('(')) {
                n->power = static_cast<int>(integer());
                expect('/', "'/' in half power");
                long two = integer();
                if (two != 2) throw ParseError("only half powers q^(k/2) are supported", pos);
                n->halfPower = true;
                expect(')', "')'");
            } else {
                n->power = static_cast<int>(integer());
            }
            return n;
        }
        return a;
    }

    ExprPtr atom() {
        skipWs();
        if (pos >= text.size()) throw ParseError("unexpected end of expression", pos + 1);
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Number;
            n->number = integer();
            return n;
        }
        if (c == '(') {
            ++pos;
            ExprPtr e = expr();
            expect(')', "')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string id = text.substr(start, pos - start);
            if (id == "d") {
                skipWs();
                expect('(', "'(' after d");
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::Diff;
                n->children = {expr()};
                expect(')', "')'");
                return n;
            }
            auto n = std::make_shared<ExprNode>();
            if (id == "q") {
                n->kind = ExprNode::Kind::Q;
            } else {
                n->kind = ExprNode::Kind::Identifier;
                n->name = id;
            }
            return n;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos + 1);
    }
};

Value promoteMul(const Space& sp, const Value& a, const Value& b) {
    // scalar * scalar, scalar * element, element * element, element * form,
    // form * element; form * form is an error.
    if (std::holds_alternative<RatQ>(a) && std::holds_alternative<RatQ>(b))
        return std::get<RatQ>(a) * std::get<RatQ>(b);
    if (std::holds_alternative<OneForm>(a) && std::holds_alternative<OneForm>(b))
        throw Error("cannot multiply two one-forms");
    auto toElem = [&](const Value& v) {
        return std::holds_alternative<RatQ>(v) ? Element::scalar(sp.algebra, std::get<RatQ>(v))
                                               : std::get<Element>(v);
    };
    if (std::holds_alternative<OneForm>(a)) return rightMul(std::get<OneForm>(a), toElem(b));
    if (std::holds_alternative<OneForm>(b)) return leftMul(toElem(a), std::get<OneForm>(b));
    return toElem(a) * toElem(b);
}

Value promoteAdd(const Space& sp, const Value& a, const Value& b, bool subtract) {
    auto scale = [&](const Value& v) -> Value {
        if (!subtract) return v;
        if (std::holds_alternative<RatQ>(v)) return -std::get<RatQ>(v);
        if (std::holds_alternative<Element>(v)) return -std::get<Element>(v);
        return std::get<OneForm>(v).scaled(-RatQ::one());
    };
    Value bb = scale(b);
    if (std::holds_alternative<OneForm>(a) || std::holds_alternative<OneForm>(bb)) {
        if (!std::holds_alternative<OneForm>(a) || !std::holds_alternative<OneForm>(bb)) {
            // adding a zero scalar/element to a form is allowed
            auto isZero = [&](const Value& v) {
                return (std::holds_alternative<RatQ>(v) && std::get<RatQ>(v).isZero()) ||
                       (std::holds_alternative<Element>(v) && std::get<Element>(v).isZero());
            };
            if (std::holds_alternative<OneForm>(a) && isZero(bb)) return a;
            if (std::holds_alternative<OneForm>(bb) && isZero(a)) return bb;
            throw Error("cannot add an algebra element and a one-form");
        }
        return std::get<OneForm>(a) + std::get<OneForm>(bb);
    }
    auto toElem = [&](const Value& v) {
        return std::holds_alternative<RatQ>(v) ? Element::scalar(sp.algebra, std::get<RatQ>(v))
                                               : std::get<Element>(v);
    };
    if (std::holds_alternative<RatQ>(a) && std::holds_alternative<RatQ>(bb))
        return std::get<RatQ>(a) + std::get<RatQ>(bb);
    return toElem(a) + toElem(bb);
}

}  // namespace

ExprPtr parseExpr(const std::string& text) {
    Parser p{text};
    ExprPtr e = p.expr();
    if (!p.eof()) throw ParseError("trailing input", p.pos + 1);
    return e;
}

Value evaluate(const ExprPtr& e, const Space& sp) {
    switch (e->kind) {
        case ExprNode::Kind::Number:
            return RatQ::ofInt(e->number);
        case ExprNode::Kind::Q:
            return RatQ::q();
        case ExprNode::Kind::Identifier: {
            if (auto letter = sp.algebra->letterByName(e->name))
                return Element::generator(sp.algebra, letter->first, letter->second);
            if (sp.calculus) {
                int lab = sp.calculus->labelIndex(e->name);
                if (lab >= 0) return OneForm::basis(sp.calculus, lab);
            }
            throw Error("unknown identifier '" + e->name + "' in space " + sp.name);
        }
        case ExprNode::Kind::Add:
            return promoteAdd(sp, evaluate(e->children[0], sp), evaluate(e->children[1], sp), false);
        case ExprNode::Kind::Sub:
            return promoteAdd(sp, evaluate(e->children[0], sp), evaluate(e->children[1], sp), true);
        case ExprNode::Kind::Mul:
            return promoteMul(sp, evaluate(e->children[0], sp), evaluate(e->children[1], sp));
        case ExprNode::Kind::Div: {
            Value a = evaluate(e->children[0], sp);
            Value b = evaluate(e->children[1], sp);
            if (!std::holds_alternative<RatQ>(b)) throw Error("division only by scalars");
            RatQ inv = std::get<RatQ>(b).inv();
            if (std::holds_alternative<RatQ>(a)) return std::get<RatQ>(a) * inv;
            if (std::holds_alternative<Element>(a)) return std::get<Element>(a).scaled(inv);
            return std::get<OneForm>(a).scaled(inv);
        }
        case ExprNode::Kind::Neg: {
            Value a = evaluate(e->children[0], sp);
            if (std::holds_alternative<RatQ>(a)) return -std::get<RatQ>(a);
            if (std::holds_alternative<Element>(a)) return -std::get<Element>(a);
            return std::get<OneForm>(a).scaled(-RatQ::one());
        }
        case ExprNode::Kind::Pow: {
            Value a = evaluate(e->children[0], sp);
            if (e->halfPower) {
                if (!std::holds_alternative<RatQ>(a) || !(std::get<RatQ>(a) == RatQ::q()))
                    throw Error("half powers apply to q only");
                return RatQ::rPow(e->power);
            }
            if (std::holds_alternative<RatQ>(a)) return std::get<RatQ>(a).pow(e->power);
            if (std::holds_alternative<Element>(a)) {
                const Element& x = std::get<Element>(a);
                if (e->power >= 0) return x.pow(e->power);
                // negative powers exist for invertible single letters only
                if (x.termCount() == 1) {
                    const auto& [m, c] = *x.terms().begin();
                    if (m.factors.size() == 1) {
                        return Element::generator(sp.algebra, m.factors[0].first,
                                                  m.factors[0].second * e->power)
                            .scaled(c.pow(e->power));
                    }
                }
                throw Error("negative powers only on invertible generators");
            }
            throw Error("cannot raise a one-form to a power");
        }
        case ExprNode::Kind::Diff: {
            if (!sp.calculus) throw Error("space " + sp.name + " carries no calculus");
            Value a = evaluate(e->children[0], sp);
            Element x = std::holds_alternative<RatQ>(a)
                            ? Element::scalar(sp.algebra, std::get<RatQ>(a))
                            : std::get<Element>(a);
            return differentiate(sp.calculus, x);
        }
    }
    throw Error("unreachable expression kind");
}

std::string renderValue(const Value& v) {
    if (std::holds_alternative<RatQ>(v)) return std::get<RatQ>(v).str();
    if (std::holds_alternative<Element>(v)) return std::get<Element>(v).str();
    return std::get<OneForm>(v).str();
}

}  // namespace qpb
