#include "qrl/parser.hpp"

#include <cctype>

#include "qrl/errors.hpp"

namespace qrl {

namespace {

class Parser {
public:
    Parser(const std::string& text, const FiniteField& field) : text_(text), field_(field) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return p;
    }

private:
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

    Polynomial expr() {
        bool negate = accept('-');
        Polynomial acc = term();
        if (negate) acc = -acc;
        while (true) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected exponent", at);
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
                if (e > 1000) throw ParseError("exponent too large", at);
                ++pos_;
            }
            return b.pow(static_cast<unsigned>(e));
        }
        return b;
    }

    Polynomial base() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            return Polynomial::variable(field_, c - 'x');
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::int64_t p = field_.characteristic();
            std::int64_t v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = (v * 10 + (text_[pos_] - '0')) % p;
                ++pos_;
            }
            return Polynomial::constant(field_, field_.from_int(v));
        }
        if (c == '(') {
            const std::size_t open = pos_++;
            Polynomial inner = expr();
            if (!accept(')')) throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos_);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            throw ParseError(std::string("unknown variable '") + c + "'", pos_);
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    const std::string& text_;
    const FiniteField& field_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const FiniteField& field) {
    return Parser(text, field).parse();
}

HomogeneousPoly parse_poly(const std::string& text, const FiniteField& field) {
    Polynomial p = parse_polynomial(text, field);
    if (p.is_zero()) throw InputError("polynomial is zero over GF(" + field.to_string() + ")");
    if (!p.is_homogeneous()) throw InputError("polynomial is not homogeneous (non-homogeneous input)");
    return HomogeneousPoly(std::move(p));
}

}  // namespace qrl
