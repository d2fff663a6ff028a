#include "irrvir/parse.hpp"

#include <cctype>
#include <string>

namespace irrvir {

namespace {

class Parser {
public:
    Parser(const VarTablePtr& vars, std::string_view text) : vars_(vars), s_(text) {}

    LaurentPoly run() {
        LaurentPoly p = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(i_) + " in \"" + std::string(s_) + "\"");
    }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    LaurentPoly expr() {
        LaurentPoly acc = term();
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    LaurentPoly term() {
        LaurentPoly acc = unary();
        for (;;) {
            if (eat('*')) {
                acc *= unary();
            } else if (eat('/')) {
                LaurentPoly d = unary();
                try {
                    acc = exact_div(acc, d);
                } catch (const Error& e) {
                    fail(e.what());
                }
            } else {
                return acc;
            }
        }
    }

    LaurentPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    LaurentPoly power() {
        LaurentPoly base = atom();
        if (!eat('^')) return base;
        bool neg = false;
        if (eat('-')) neg = true;
        bool paren = eat('(');
        if (paren && eat('-')) neg = !neg;
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected integer exponent");
        unsigned n = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, i_ - start))));
        if (paren && !eat(')')) fail("expected ')'");
        if (!neg) return base.pow(n);
        try {
            return base.inverse().pow(n);
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    LaurentPoly atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            LaurentPoly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return LaurentPoly::constant(vars_, Rational(mpz_class(std::string(s_.substr(start, i_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name(s_.substr(start, i_ - start));
            if (!vars_ || !vars_->find(name)) fail("unknown variable " + name);
            return LaurentPoly::variable(vars_, name);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const VarTablePtr& vars_;
    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

LaurentPoly parse_poly(const VarTablePtr& vars, std::string_view text) { return Parser(vars, text).run(); }

}  // namespace irrvir
