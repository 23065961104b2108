#include "discorr/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "discorr/errors.hpp"

namespace discorr::expr {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    double parse() {
        const double v = sum();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw SpecError("bad expression '" + text_ + "': " + why);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    double sum() {
        double v = product();
        for (;;) {
            if (eat('+')) v += product();
            else if (eat('-')) v -= product();
            else return v;
        }
    }

    double product() {
        double v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) {
                const double d = factor();
                if (d == 0.0) fail("division by zero");
                v /= d;
            } else return v;
        }
    }

    double factor() {
        if (eat('-')) return -factor();
        double v = primary();
        if (eat('^')) v = std::pow(v, factor());
        return v;
    }

    double primary() {
        skip_ws();
        if (eat('(')) {
            const double v = sum();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return word();
        fail("unexpected character");
    }

    double number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<size_t>(end - begin);
        return v;
    }

    double word() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "pi") return std::numbers::pi;
        if (name == "sqrt") {
            skip_ws();
            double arg;
            if (eat('(')) {
                arg = sum();
                if (!eat(')')) fail("missing ')' after sqrt");
            } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
                arg = number();  // shorthand: sqrt8
            } else {
                fail("sqrt needs an argument");
            }
            if (arg < 0.0) fail("sqrt of a negative value");
            return std::sqrt(arg);
        }
        fail("unknown name '" + name + "'");
    }

    const std::string& text_;
    size_t pos_ = 0;
};

} // namespace

double evaluate(const std::string& text) { return Parser(text).parse(); }

} // namespace discorr::expr
