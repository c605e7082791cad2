#include "crnms/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

#include "crnms/errors.hpp"

namespace crnms {

namespace {

Real mpz_to_real(const mpz_class& z) {
    if (z == 0) return 0.0L;
    mpz_class a = abs(z);
    const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    long shift = 0;
    if (bits > 64) {
        shift = static_cast<long>(bits - 64);
        mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    }
    const std::uint64_t hi = mpz_get_ui(a.get_mpz_t());
    const Real v = std::ldexp(static_cast<Real>(hi), static_cast<int>(shift));
    return sgn(z) < 0 ? -v : v;
}

}  // namespace

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty number");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        auto valid_int = [](const std::string& t) {
            std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (i >= t.size()) return false;
            for (; i < t.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
            return true;
        };
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den))
            throw Error(ErrorCode::InvalidArgument, "malformed rational '" + s + "'");
        if (num[0] == '+') num.erase(0, 1);
        if (den[0] == '+') den.erase(0, 1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + s + "'");
        Rational q(n, d);
        q.canonicalize();
        return q;
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long frac_len = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            seen_digit = true;
            if (seen_point) ++frac_len;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw Error(ErrorCode::InvalidArgument, "malformed number '" + s + "'");
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E')
            throw Error(ErrorCode::InvalidArgument, "malformed number '" + s + "'");
        std::string e = s.substr(i + 1);
        std::size_t pos = 0;
        try {
            exponent = std::stol(e, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (e.empty() || pos != e.size() || std::labs(exponent) > 100000)
            throw Error(ErrorCode::InvalidArgument, "malformed exponent in '" + s + "'");
    }
    mpz_class mant(digits, 10);
    long scale = exponent - frac_len;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    Rational q = scale >= 0 ? Rational(mant * p) : Rational(mant, p);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

Rational exact_rational(Real v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
    if (v == 0.0L) return Rational(0);
    int e = 0;
    Real m = std::frexp(std::fabs(v), &e);
    const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 64));
    mpz_class z(static_cast<unsigned long>(mant));
    Rational q(z);
    const long shift = static_cast<long>(e) - 64;
    if (shift >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
    q.canonicalize();
    return v < 0 ? Rational(-q) : q;
}

Real to_real(const Rational& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    const std::size_t nb = mpz_sizeinbase(num.get_mpz_t(), 2);
    const std::size_t db = mpz_sizeinbase(den.get_mpz_t(), 2);
    if (nb <= 16000 && db <= 16000) {
        // Scale both parts into range before dividing to avoid overflow.
        const long ns = nb > 64 ? static_cast<long>(nb) - 64 : 0;
        const long ds = db > 64 ? static_cast<long>(db) - 64 : 0;
        mpz_class n = num, d = den;
        if (ns) mpz_tdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(ns));
        if (ds) mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(ds));
        return std::ldexp(mpz_to_real(n) / mpz_to_real(d), static_cast<int>(ns - ds));
    }
    return mpz_to_real(num) / mpz_to_real(den);
}

int sign(const Rational& q) { return sgn(q); }

}  // namespace crnms
