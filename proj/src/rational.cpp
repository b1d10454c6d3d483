#include "crnbif/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crn {

Q parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto check_int = [&](const std::string& t, bool allow_sign) {
        size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        if (!check_int(ip, false) || (!fp.empty() && !check_int(fp, false)))
            throw std::invalid_argument("malformed rational: " + raw);
        Z num(ip + fp, 10), den = 1;
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        Q q(num, den);
        q.canonicalize();
        return neg ? Q(-q) : q;
    }
    auto slash = s.find('/');
    std::string ns = s.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!check_int(ns, true) || !check_int(ds, false))
        throw std::invalid_argument("malformed rational: " + raw);
    if (ns[0] == '+') ns = ns.substr(1);
    Z d(ds, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + raw);
    Q q(Z(ns, 10), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Q qpow(const Q& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to negative power");
        return qpow(Q(1) / base, -e);
    }
    Q r = 1, b = base;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

double to_double(const Q& q) { return q.get_d(); }

Q dyadic_floor(const Q& x, unsigned bits) {
    Z scale = 1;
    scale <<= bits;
    Z f;
    Q scaled = x * scale;
    mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Q r(f, scale);
    r.canonicalize();
    return r;
}

}  // namespace crn
