#include "ftspace/ordinal.hpp"

#include "ftspace/error.hpp"

#include <algorithm>
#include <cctype>

namespace ftspace::sober {

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Ord::Ord(std::uint64_t n) {
    if (n > 0) terms_.push_back({0, n});
}

Ord Ord::omega_power(std::uint32_t e, std::uint64_t c) {
    Ord o;
    if (c > 0) o.terms_.push_back({e, c});
    return o;
}

std::uint64_t Ord::finite_part() const {
    if (terms_.empty() || terms_.back().exp != 0) return 0;
    return terms_.back().coef;
}

Ord Ord::limit_part() const {
    Ord o = *this;
    if (!o.terms_.empty() && o.terms_.back().exp == 0) o.terms_.pop_back();
    return o;
}

Ord Ord::predecessor() const {
    if (!is_successor()) throw DomainError("ordinal " + to_string() + " is not a successor");
    Ord o = *this;
    if (--o.terms_.back().coef == 0) o.terms_.pop_back();
    return o;
}

std::uint64_t Ord::to_finite() const {
    if (!is_finite()) throw DomainError("ordinal " + to_string() + " is not finite");
    return finite_part();
}

Ord Ord::operator+(const Ord& rhs) const {
    if (rhs.is_zero()) return *this;
    const Term& lead = rhs.terms_.front();
    Ord out;
    for (const auto& t : terms_) {
        if (t.exp > lead.exp) {
            out.terms_.push_back(t);
        } else {
            if (t.exp == lead.exp) {
                out.terms_.push_back({lead.exp, t.coef + lead.coef});
                out.terms_.insert(out.terms_.end(), rhs.terms_.begin() + 1, rhs.terms_.end());
                return out;
            }
            break;
        }
    }
    out.terms_.insert(out.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    return out;
}

std::strong_ordering operator<=>(const Ord& a, const Ord& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto& x = a.terms_[k];
        const auto& y = b.terms_[k];
        if (x.exp != y.exp) return x.exp <=> y.exp;
        if (x.coef != y.coef) return x.coef <=> y.coef;
    }
    return a.terms_.size() <=> b.terms_.size();
}

std::string Ord::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += "+";
        if (t.exp == 0) {
            out += std::to_string(t.coef);
            continue;
        }
        out += "w";
        if (t.exp > 1) out += "^" + std::to_string(t.exp);
        if (t.coef > 1) out += "*" + std::to_string(t.coef);
    }
    return out;
}

namespace {

std::uint64_t parse_count(std::string_view text, std::size_t& pos, std::string_view whole) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ParseError("malformed ordinal '" + std::string(whole) + "'", start);
    if (pos - start > 18) throw ParseError("ordinal coefficient too large in '" + std::string(whole) + "'", start);
    return std::stoull(std::string(text.substr(start, pos - start)));
}

} // namespace

Ord Ord::parse(std::string_view whole) {
    std::string compact;
    for (char c : whole)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    std::string_view text = compact;
    if (text.empty()) throw ParseError("empty ordinal", 0);
    Ord total;
    std::size_t pos = 0;
    while (true) {
        Ord term;
        if (text[pos] == 'w') {
            ++pos;
            std::uint32_t e = 1;
            std::uint64_t c = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                e = static_cast<std::uint32_t>(parse_count(text, pos, whole));
            }
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                c = parse_count(text, pos, whole);
            }
            term = omega_power(e, c);
        } else {
            term = Ord(parse_count(text, pos, whole));
        }
        total = total + term;
        if (pos == text.size()) break;
        if (text[pos] != '+') throw ParseError("malformed ordinal '" + std::string(whole) + "'", pos);
        ++pos;
        if (pos == text.size()) throw ParseError("malformed ordinal '" + std::string(whole) + "'", pos);
    }
    return total;
}

Record::Record(Ord length, std::vector<Ord> support) : length_(std::move(length)) {
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (const auto& p : support)
        if (!(p < length_))
            throw DomainError("record position " + p.to_string() + " is not below the length " + length_.to_string());
    support_.assign(support.begin(), support.end());
}

bool Record::at(const Ord& pos) const {
    if (!(pos < length_))
        throw DomainError("record position " + pos.to_string() + " is not below the length " + length_.to_string());
    return std::binary_search(support_.begin(), support_.end(), pos);
}

Record Record::restrict(const Ord& beta) const {
    if (length_ < beta)
        throw DomainError("cannot restrict a record of length " + length_.to_string() + " to " + beta.to_string());
    Record out;
    out.length_ = beta;
    for (const auto& p : support_) {
        if (!(p < beta)) break;
        out.support_.push_back(p);
    }
    return out;
}

Record Record::with(const Ord& pos, bool value) const {
    if (!(pos < length_))
        throw DomainError("record position " + pos.to_string() + " is not below the length " + length_.to_string());
    Record out = *this;
    auto it = std::lower_bound(out.support_.begin(), out.support_.end(), pos);
    bool present = it != out.support_.end() && *it == pos;
    if (value && !present) out.support_.insert(it, pos);
    if (!value && present) out.support_.erase(it);
    return out;
}

Ord o_lambda(const Record& r, const Ord& lambda) {
    if (!lambda.is_limit()) throw DomainError("o^lambda needs a limit ordinal, got " + lambda.to_string());
    if (r.length() < lambda)
        throw DomainError("limit " + lambda.to_string() + " exceeds the record length " + r.length().to_string());
    auto s = r.support();
    auto it = std::lower_bound(s.begin(), s.end(), lambda);
    if (it == s.begin()) return Ord(0);
    return std::prev(it)->succ();
}

Parity lambda_parity(const Record& r, const Ord& lambda) { return o_lambda(r, lambda).parity(); }

} // namespace ftspace::sober
