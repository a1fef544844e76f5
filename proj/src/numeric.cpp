#include "gaugeobs/numeric.hpp"

#include <cctype>

namespace gaugeobs {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    std::size_t slash = text.find('/');
    auto check_int = [&](const std::string& s) {
        if (s.empty()) throw ValidationError("bad rational literal: '" + text + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw ValidationError("bad rational literal: '" + text + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ValidationError("bad rational literal: '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_int(text);
        return Rat(Int(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    Int d(den);
    if (d == 0) throw ValidationError("zero denominator in '" + text + "'");
    return make_rat(Int(num), d);
}

std::string format_rat(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool perfect_sqrt(const Int& n, Int& root) {
    if (n < 0) return false;
    Int r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (rem != 0) return false;
    root = r;
    return true;
}

}  // namespace gaugeobs
