#include "nadyn/parse.hpp"

#include <cctype>

#include "nadyn/error.hpp"

namespace nadyn {

namespace {

constexpr long kMaxExponent = 4096;

class Parser {
public:
    Parser(const FieldSpec& f, const std::string& text) : f_(f), s_(text) {}

    KPoly run() {
        skip_ws();
        if (pos_ >= s_.size()) fail("empty input");
        KPoly v = expr();
        skip_ws();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

    [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
        throw Error(ErrorKind::ParseError, "column " + std::to_string(at + 1) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    KPoly expr() {
        KPoly v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    KPoly term() {
        KPoly v = unary();
        for (;;) {
            if (eat('*')) {
                v = v * unary();
            } else if (skip_ws(), pos_ < s_.size() && s_[pos_] == '/') {
                const std::size_t at = pos_++;
                const KPoly d = unary();
                if (d.degree() > 0) fail_at(at, "division by a non-constant polynomial");
                if (d.is_zero()) fail_at(at, "division by zero");
                v = v.scaled(KElem::one(f_) / d.coeff(0));
            } else {
                return v;
            }
        }
    }

    KPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    KPoly power() {
        KPoly base = atom();
        if (!eat('^')) return base;
        skip_ws();
        const std::size_t at = pos_;
        const bool paren = eat('(');
        const bool neg = eat('-');
        skip_ws();
        const std::size_t digits_at = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits_at) fail("expected an integer exponent");
        if (pos_ - digits_at > 6) fail_at(digits_at, "exponent too large");
        long e = std::stol(s_.substr(digits_at, pos_ - digits_at));
        if (paren && !eat(')')) fail("expected ')'");
        if (e > kMaxExponent) fail_at(digits_at, "exponent too large");
        if (neg) e = -e;
        if (e < 0) {
            if (base.degree() > 0) fail_at(at, "negative power of a non-constant polynomial");
            if (base.is_zero()) fail_at(at, "negative power of zero");
            return KPoly::constant(base.coeff(0).pow(e));
        }
        KPoly acc = KPoly::constant(KElem::one(f_));
        for (long i = 0; i < e; ++i) acc = acc * base;
        return acc;
    }

    KPoly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            const std::size_t at = pos_++;
            KPoly v = expr();
            if (!eat(')')) fail("expected ')' to close the '(' at column " + std::to_string(at + 1));
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return KPoly::constant(KElem::from_mpz(f_, mpz_class(s_.substr(start, pos_ - start))));
        }
        const char uni = f_.kind == FieldKind::PadicRationals ? 'p' : 't';
        if (c == 'z') {
            ++pos_;
            return KPoly::variable(f_);
        }
        if (c == uni) {
            ++pos_;
            return KPoly::constant(KElem::uniformizer_power(f_, 1));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const FieldSpec& f_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

KPoly parse_poly(const FieldSpec& f, const std::string& text) { return Parser(f, text).run(); }

KElem parse_element(const FieldSpec& f, const std::string& text) {
    const KPoly v = parse_poly(f, text);
    if (v.degree() > 0) throw Error(ErrorKind::ParseError, "expected a constant, got " + v.to_string());
    return v.coeff(0);
}

} // namespace nadyn
