#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rauzy {

using Rational = mpq_class;

/// Complex number with exact rational parts.
struct Complex {
    Rational re;
    Rational im;

    Complex() = default;
    Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

/// "p/q", or "p" for integers.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// "a+bi" with rational parts, e.g. "3/2-1i".
std::string to_string(const Complex& z);

} // namespace rauzy
