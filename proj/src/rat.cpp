#include "ifshide/rat.hpp"

namespace ifshide {

Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat::parse: empty string");
    auto check_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!check_int(s)) throw std::invalid_argument("Rat::parse: bad integer '" + s + "'");
        return Rat(mpq_class(mpz_class(s)));
    }
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!check_int(ns) || !check_int(ds))
        throw std::invalid_argument("Rat::parse: bad rational '" + s + "'");
    mpz_class n(ns), d(ds);
    if (d <= 0) throw std::invalid_argument("Rat::parse: denominator must be positive: '" + s + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rat(q);
}

long Rat::floor_long() const {
    mpz_class f = floor();
    if (!f.fits_slong_p()) throw std::overflow_error("Rat::floor_long: out of range");
    return f.get_si();
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class floor_div(const Rat& x, const Rat& step) {
    if (step.sign() <= 0) throw std::invalid_argument("floor_div: step must be positive");
    return (x / step).floor();
}

bool is_multiple_of(const Rat& x, const Rat& step) {
    if (step.sign() <= 0) throw std::invalid_argument("is_multiple_of: step must be positive");
    return (x / step).is_integer();
}

}  // namespace ifshide
