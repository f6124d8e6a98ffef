#include "rauzy/rational.hpp"

#include "rauzy/error.hpp"

namespace rauzy {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    Rational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0)
        throw Error(ErrorCode::Parse, "bad rational '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Complex& z) {
    std::string out = to_string(z.re);
    if (sgn(z.im) >= 0)
        out += '+';
    out += to_string(z.im);
    out += 'i';
    return out;
}

} // namespace rauzy
