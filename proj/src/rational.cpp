#include "cmjet/rational.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace cmjet {

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("malformed rational '" + s + "': " + e.what());
    }
}

std::string format_rational(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, 0.5 <= |m| < 1
    // 53 bits of mantissa
    int64_t mi = static_cast<int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(mi);
    if (exp >= 0) {
        r *= Rat(Int(1) << exp);
    } else {
        r /= Rat(Int(1) << (-exp));
    }
    return r;
}

Rat rat_approx(double x, const Int& max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    bool neg = x < 0;
    double v = neg ? -x : x;
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 1e18) break;
        Int a = static_cast<int64_t>(fl);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rat r(p1, q1 == 0 ? Int(1) : q1);
    return neg ? -r : r;
}

bool perfect_square(const Int& v, Int& root) {
    if (v < 0) return false;
    if (v == 0) {
        root = 0;
        return true;
    }
    Int r = sqrt(v);
    // boost sqrt returns floor
    if (r * r == v) {
        root = r;
        return true;
    }
    return false;
}

std::string format_rc(const RC& c) {
    std::ostringstream os;
    os << format_rational(c.re);
    if (c.im != 0) {
        os << (c.im > 0 ? "+" : "-") << format_rational(abs(c.im)) << "i";
    }
    return os.str();
}

}  // namespace cmjet
