#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace cmjet {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Parses "p/q", "p", with optional sign. Throws on malformed input.
Rat parse_rational(const std::string& s);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rat& r);

// Nearest rational to a double (doubles are dyadic rationals, so exact).
Rat rat_from_double(double x);

// Best rational approximation with denominator at most max_den
// (continued-fraction convergents).
Rat rat_approx(double x, const Int& max_den);

// Integer square root test: returns true and sets root if v is a perfect square.
bool perfect_square(const Int& v, Int& root);

// Complex number with exact rational real and imaginary parts.
struct RC {
    Rat re, im;

    RC() : re(0), im(0) {}
    RC(Rat r) : re(std::move(r)), im(0) {}
    RC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    RC(int r) : re(r), im(0) {}
    RC(int r, int i) : re(r), im(i) {}

    static RC i_unit() { return RC(0, 1); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    RC conj() const { return RC(re, -im); }

    Rat norm2() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    RC operator-() const { return RC(-re, -im); }

    RC& operator+=(const RC& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RC& operator-=(const RC& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend RC operator+(RC a, const RC& b) { return a += b; }
    friend RC operator-(RC a, const RC& b) { return a -= b; }
    friend RC operator*(const RC& a, const RC& b) {
        return RC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    RC& operator*=(const RC& o) { return *this = *this * o; }

    RC inverse() const {
        Rat n = norm2();
        if (n == 0) throw std::domain_error("division by zero complex rational");
        return RC(re / n, -im / n);
    }
    friend RC operator/(const RC& a, const RC& b) { return a * b.inverse(); }
    RC& operator/=(const RC& o) { return *this = *this / o; }

    friend bool operator==(const RC& a, const RC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RC& a, const RC& b) { return !(a == b); }
};

inline RC conj(const RC& c) { return c.conj(); }

std::string format_rc(const RC& c);

}  // namespace cmjet
