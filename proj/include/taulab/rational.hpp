#pragma once

// Exact scalars: GMP rationals and Gaussian rationals (a + b i, a, b in Q).

#include <gmpxx.h>

#include <charconv>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace taulab {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& q) {
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "7", "-3/4" or a decimal literal such as "1.25" or "-2e-3".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0)
            throw std::invalid_argument("bad rational literal '" + s + "'");
        q.canonicalize();
        return q;
    }
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');
    std::string digits;
    long exponent = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c == 'e' || c == 'E') {
            long e = 0;
            const char* first = s.data() + i + 1;
            const char* last = s.data() + s.size();
            if (first != last && *first == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, e);
            if (ec != std::errc() || ptr != last)
                throw std::invalid_argument("bad exponent in '" + s + "'");
            exponent += e;
            i = s.size();
            break;
        } else {
            throw std::invalid_argument("bad rational literal '" + s + "'");
        }
    }
    if (!any_digit) throw std::invalid_argument("bad rational literal '" + s + "'");
    Integer num(digits, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

/// Exact conversion through the shortest round-trip decimal, so 0.1 becomes 1/10.
inline Rational rational_from_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw std::invalid_argument("unrepresentable double");
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

/// Gaussian rational.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() : re(0), im(0) {}
    ComplexRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT(implicit)
    ComplexRational(long r) : re(r), im(0) {}                  // NOLINT(implicit)
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    ComplexRational& operator+=(const ComplexRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) {
        if (im == 0 && o.im == 0) {
            re *= o.re;
            return *this;
        }
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    ComplexRational& operator/=(const ComplexRational& o) {
        const Rational norm = o.re * o.re + o.im * o.im;
        if (norm == 0) throw std::domain_error("division by zero");
        Rational r = (re * o.re + im * o.im) / norm;
        Rational i = (im * o.re - re * o.im) / norm;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
    friend ComplexRational operator-(const ComplexRational& a) { return {Rational(-a.re), Rational(-a.im)}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

    [[nodiscard]] bool is_real() const { return im == 0; }
    [[nodiscard]] std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline ComplexRational conj(const ComplexRational& z) { return {z.re, Rational(-z.im)}; }

inline std::string to_string(const ComplexRational& z) {
    if (z.im == 0) return to_string(z.re);
    if (z.re == 0) return to_string(z.im) + "i";
    std::string im = to_string(z.im);
    if (im.front() != '-') im = "+" + im;
    return to_string(z.re) + im + "i";
}

inline std::ostream& operator<<(std::ostream& os, const ComplexRational& z) { return os << to_string(z); }

/// Uniform access to the handful of operations the templates need from a scalar.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_rational(const Rational& q) { return q; }
    static Rational conjugate(const Rational& q) { return q; }
    static std::complex<double> to_complex(const Rational& q) { return {q.get_d(), 0.0}; }
    static constexpr bool exact = true;
};

template <>
struct ScalarTraits<ComplexRational> {
    static ComplexRational zero() { return {}; }
    static ComplexRational one() { return ComplexRational(1L); }
    static ComplexRational from_rational(const Rational& q) { return ComplexRational(q); }
    static ComplexRational conjugate(const ComplexRational& z) { return conj(z); }
    static std::complex<double> to_complex(const ComplexRational& z) { return z.to_complex(); }
    static constexpr bool exact = true;
};

template <>
struct ScalarTraits<std::complex<double>> {
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static std::complex<double> conjugate(const std::complex<double>& z) { return std::conj(z); }
    static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
    static constexpr bool exact = false;
};

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

/// q^e for integer e of either sign.
inline Rational pow(const Rational& q, long e) {
    if (e < 0 && q == 0) throw std::domain_error("negative power of zero");
    const Rational base = e < 0 ? Rational(Rational(1) / q) : q;
    const auto k = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace taulab
