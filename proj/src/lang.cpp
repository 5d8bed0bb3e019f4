#include "ftspace/lang.hpp"

#include "ftspace/error.hpp"

#include <cctype>

namespace ftspace::lang {

Expr Expr::nat(std::string event) {
    return Expr(std::make_shared<const Node>(Node{Kind::Nat, std::move(event), Rational(0), {}}));
}

Expr Expr::neg(Expr e) {
    return Expr(std::make_shared<const Node>(Node{Kind::Not, {}, Rational(0), {std::move(e)}}));
}

Expr Expr::conj(std::vector<Expr> parts) {
    if (parts.empty()) throw DomainError("and() needs at least one conjunct");
    return Expr(std::make_shared<const Node>(Node{Kind::And, {}, Rational(0), std::move(parts)}));
}

Expr Expr::disj(std::vector<Expr> parts) {
    if (parts.empty()) throw DomainError("or() needs at least one disjunct");
    return Expr(std::make_shared<const Node>(Node{Kind::Or, {}, Rational(0), std::move(parts)}));
}

Expr Expr::bel(std::string player, Rational p, Expr e) {
    if (p < 0 || p > 1) throw DomainError("belief threshold " + format_rational(p) + " is not in [0,1]");
    return Expr(std::make_shared<const Node>(Node{Kind::Bel, std::move(player), std::move(p), {std::move(e)}}));
}

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

class Parser {
public:
    Parser(std::string_view text, const types::NatureSpace* nature) : text_(text), nature_(nature) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, pos_);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool keyword(std::string_view kw) {
        skip();
        if (text_.substr(pos_, kw.size()) != kw) return false;
        // "not" must not swallow the prefix of an identifier-like token such as "nota(".
        std::size_t end = pos_ + kw.size();
        if (std::isalpha(static_cast<unsigned char>(kw.back())) && end < text_.size() &&
            std::isalpha(static_cast<unsigned char>(text_[end])))
            return false;
        pos_ = end;
        return true;
    }

    void expect(char c) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string ident(const char* what) {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        return std::string(text_.substr(start, pos_ - start));
    }

    Rational rational() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                                       text_[pos_] == '-' || text_[pos_] == '+'))
            ++pos_;
        Rational p;
        try {
            p = parse_rational(text_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            throw ParseError("malformed rational threshold", start + e.position());
        }
        if (p < 0 || p > 1) {
            pos_ = start;
            fail("threshold " + format_rational(p) + " is not in [0,1]");
        }
        return p;
    }

    std::vector<Expr> list() {
        expect('(');
        std::vector<Expr> parts{expr()};
        skip();
        while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            parts.push_back(expr());
            skip();
        }
        expect(')');
        return parts;
    }

    Expr expr() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        std::size_t start = pos_;
        if (keyword("nat")) {
            expect('(');
            skip();
            std::size_t at = pos_;
            std::string name = ident("event name");
            if (nature_ && !nature_->has_event(name)) {
                pos_ = at;
                fail("unknown nature event '" + name + "'");
            }
            expect(')');
            return Expr::nat(std::move(name));
        }
        if (keyword("not")) return Expr::neg(expr());
        if (keyword("and")) return Expr::conj(list());
        if (keyword("or")) return Expr::disj(list());
        if (keyword("B")) {
            expect('[');
            std::string player = ident("player name");
            expect(',');
            Rational p = rational();
            expect(']');
            expect('(');
            Expr body = expr();
            expect(')');
            return Expr::bel(std::move(player), std::move(p), std::move(body));
        }
        pos_ = start;
        fail("expected an expression");
    }

    std::string_view text_;
    const types::NatureSpace* nature_;
    std::size_t pos_ = 0;
};

void print(const Expr& e, std::string& out) {
    switch (e.kind()) {
    case Kind::Nat:
        out += "nat(" + e.name() + ")";
        return;
    case Kind::Not:
        out += "not ";
        print(e.child(), out);
        return;
    case Kind::And:
    case Kind::Or: {
        out += e.kind() == Kind::And ? "and(" : "or(";
        bool first = true;
        for (const auto& c : e.children()) {
            if (!first) out += ", ";
            print(c, out);
            first = false;
        }
        out += ")";
        return;
    }
    case Kind::Bel:
        out += "B[" + e.name() + "," + format_rational(e.threshold()) + "](";
        print(e.child(), out);
        out += ")";
        return;
    }
}

} // namespace

Expr parse(std::string_view text, const types::NatureSpace* nature) { return Parser(text, nature).run(); }

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

std::size_t depth(const Expr& e) {
    std::unordered_map<const void*, std::size_t> memo;
    auto go = [&](auto&& self, const Expr& x) -> std::size_t {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        std::size_t d = 0;
        switch (x.kind()) {
        case Kind::Nat: d = 0; break;
        case Kind::Not: d = self(self, x.child()); break;
        case Kind::And:
        case Kind::Or:
            for (const auto& c : x.children()) d = std::max(d, self(self, c));
            break;
        case Kind::Bel: d = self(self, x.child()) + 1; break;
        }
        memo.emplace(x.id(), d);
        return d;
    };
    return go(go, e);
}

Expr desugar(const Expr& e) {
    std::unordered_map<const void*, Expr> memo;
    auto go = [&](auto&& self, const Expr& x) -> Expr {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        Expr out = x;
        switch (x.kind()) {
        case Kind::Nat: break;
        case Kind::Not: out = Expr::neg(self(self, x.child())); break;
        case Kind::And: {
            std::vector<Expr> parts;
            for (const auto& c : x.children()) parts.push_back(self(self, c));
            out = Expr::conj(std::move(parts));
            break;
        }
        case Kind::Or: {
            std::vector<Expr> parts;
            for (const auto& c : x.children()) parts.push_back(Expr::neg(self(self, c)));
            out = Expr::neg(Expr::conj(std::move(parts)));
            break;
        }
        case Kind::Bel: out = Expr::bel(x.name(), x.threshold(), self(self, x.child())); break;
        }
        memo.emplace(x.id(), out);
        return out;
    };
    return go(go, e);
}

const Subset& Evaluator::operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Subset out(space_.size());
    switch (e.kind()) {
    case Kind::Nat: {
        const Subset& ev = space_.nature().event(e.name());
        for (std::size_t m = 0; m < space_.size(); ++m)
            if (ev.test(space_.theta(m))) out.set(m);
        break;
    }
    case Kind::Not:
        out = (*this)(e.child());
        out.flip();
        break;
    case Kind::And:
        out.set();
        for (const auto& c : e.children()) out &= (*this)(c);
        break;
    case Kind::Or:
        for (const auto& c : e.children()) out |= (*this)(c);
        break;
    case Kind::Bel: {
        std::size_t player = space_.player_index(e.name());
        out = types::belief_operator(space_, player, e.threshold(), (*this)(e.child()));
        break;
    }
    }
    keep_.push_back(e);
    return memo_.emplace(e.id(), std::move(out)).first->second;
}

Subset eval(const TypeSpace& space, const Expr& e) { return Evaluator(space)(e); }

bool desc_contains(const TypeSpace& space, std::size_t m, const Expr& e) {
    if (m >= space.size()) throw DomainError("state index out of range");
    return eval(space, e).test(m);
}

Rational believed_value(const TypeSpace& space, std::size_t player, std::size_t m, const Expr& e) {
    if (m >= space.size()) throw DomainError("state index out of range");
    if (player >= space.players().size()) throw DomainError("player index out of range");
    return measure::measure_of(space.type(player, m), eval(space, e));
}

} // namespace ftspace::lang
