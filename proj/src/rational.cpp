#include "ftspace/rational.hpp"

#include "ftspace/error.hpp"
#include "ftspace/subset.hpp"

#include <cctype>

namespace ftspace {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
        num_digits.remove_prefix(1);
    if (!all_digits(num_digits)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);

    mpz_class n{std::string(num_digits)};
    if (num.front() == '-') n = -n;
    if (slash == std::string_view::npos) return Rational(n);

    if (!all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'", slash + 1);
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

std::string to_string(const Subset& s) {
    std::string out = "{";
    bool first = true;
    for (auto k = s.find_first(); k != Subset::npos; k = s.find_next(k)) {
        if (!first) out += ",";
        out += std::to_string(k);
        first = false;
    }
    return out + "}";
}

} // namespace ftspace
