#include "pillai/numeric.hpp"

#include <cctype>

#include "pillai/errors.hpp"

namespace pillai {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Integer num(s.substr(0, slash));
            Integer den(s.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator in '" + s + "'");
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(Integer(s));
        std::string intpart = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("malformed decimal '" + s + "'");
        bool neg = !intpart.empty() && intpart[0] == '-';
        Integer ip = intpart.empty() || intpart == "-" ? Integer(0) : Integer(intpart);
        Integer scale = ipow(Integer(10), frac.size());
        Integer fp = frac.empty() ? Integer(0) : Integer(frac);
        Integer num = abs(ip) * scale + fp;
        if (neg) num = -num;
        Rational q(num, scale);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::size_t hash_integer(const Integer& z) {
    const mp_limb_t* limbs = mpz_limbs_read(z.get_mpz_t());
    int n = z.get_mpz_t()->_mp_size;
    std::uint64_t h = 1469598103934665603ULL;
    h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(n));
    h *= 1099511628211ULL;
    int an = n < 0 ? -n : n;
    for (int i = 0; i < an; ++i) {
        h ^= static_cast<std::uint64_t>(limbs[i]);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace pillai
