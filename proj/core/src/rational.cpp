#include <dsslp/rational.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace dsslp {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

mpz_class pow10(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return p;
}

[[noreturn]] void bad(const std::string& text) {
    throw std::invalid_argument("not a rational: '" + text + "'");
}

// Signed decimal literal with optional fraction part and exponent.
Rational parse_decimal(const std::string& text) {
    size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_digit = false, seen_dot = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_len;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) bad(text);
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_neg = text[pos] == '-';
            ++pos;
        }
        if (pos == text.size()) bad(text);
        long e = 0;
        for (; pos < text.size(); ++pos) {
            if (!std::isdigit(static_cast<unsigned char>(text[pos]))) bad(text);
            e = e * 10 + (text[pos] - '0');
            if (e > 1000000) bad(text);
        }
        exponent = exp_neg ? -e : e;
    }
    if (pos != text.size()) bad(text);

    mpz_class num(digits.empty() ? "0" : digits);
    mpz_class den = pow10(frac_len);
    if (exponent >= 0)
        num *= pow10(exponent);
    else
        den *= pow10(-exponent);
    if (negative) num = -num;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) bad(text);
    size_t slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    std::string ns = trim(s.substr(0, slash));
    std::string ds = trim(s.substr(slash + 1));
    if (ns.empty() || ds.empty() || ds.find('/') != std::string::npos) bad(text);
    mpz_class num, den;
    try {
        num = mpz_class(ns);
        den = mpz_class(ds);
    } catch (const std::invalid_argument&) {
        bad(text);
    }
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string fraction_string(const Rational& q) {
    return q.get_str();
}

std::string decimal_string(const Rational& q, int significant_digits) {
    if (significant_digits < 1) throw std::invalid_argument("significant_digits must be positive");
    if (q == 0) return "0";
    // 4 bits per digit is plenty for correct rounding at the requested precision.
    mpf_class f(q, static_cast<unsigned>(significant_digits) * 4 + 64);
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, static_cast<size_t>(significant_digits));
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant = mant.substr(1);
    }
    if (mant.empty()) return "0";
    // Value is 0.mant * 10^exp.
    std::string out;
    if (exp > 0 && exp <= 15) {
        if (static_cast<size_t>(exp) >= mant.size()) {
            out = mant + std::string(static_cast<size_t>(exp) - mant.size(), '0');
        } else {
            out = mant.substr(0, static_cast<size_t>(exp)) + "." + mant.substr(static_cast<size_t>(exp));
        }
    } else if (exp <= 0 && exp > -4) {
        out = "0." + std::string(static_cast<size_t>(-exp), '0') + mant;
    } else {
        out = mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(exp - 1);
    }
    return sign + out;
}

double to_double(const Rational& q) {
    return q.get_d();
}

}  // namespace dsslp
