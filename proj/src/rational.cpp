#include "sheafkit/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace sheafkit {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw bad();

    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }

    mpq_class q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto n = s.substr(0, slash), d = s.substr(slash + 1);
        if (!all_digits(n) || !all_digits(d)) throw bad();
        mpz_class den(std::string(d), 10);
        if (den == 0) throw std::domain_error("rational with zero denominator");
        q = mpq_class(mpz_class(std::string(n), 10), den);
    } else {
        long exp10 = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto es = s.substr(e + 1);
            bool eneg = false;
            if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
                eneg = es.front() == '-';
                es.remove_prefix(1);
            }
            if (!all_digits(es) || es.size() > 6) throw bad();
            exp10 = std::stol(std::string(es));
            if (eneg) exp10 = -exp10;
            s = s.substr(0, e);
        }
        std::string digits;
        auto dot = s.find('.');
        if (dot == std::string_view::npos) {
            if (!all_digits(s)) throw bad();
            digits = s;
        } else {
            auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
            if (ip.empty() && fp.empty()) throw bad();
            if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) throw bad();
            digits = std::string(ip) + std::string(fp);
            exp10 -= static_cast<long>(fp.size());
        }
        mpz_class m(digits, 10);
        if (exp10 >= 0)
            q = mpq_class(m * pow10(static_cast<unsigned long>(exp10)));
        else
            q = mpq_class(m, pow10(static_cast<unsigned long>(-exp10)));
    }
    q.canonicalize();
    if (neg) q = -q;
    return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace sheafkit
