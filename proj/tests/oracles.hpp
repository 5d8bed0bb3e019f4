#pragma once

// Brute-force description oracle: every event definable by an expression of depth
// at most d, built as real expressions and evaluated with the library evaluator.

#include "ftspace/lang.hpp"
#include "ftspace/typespace.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace testing {

using namespace ftspace;

class DescriptionOracle {
public:
    explicit DescriptionOracle(const types::TypeSpace& space) : space_(space), eval_(space) {
        for (const auto& [name, s] : space.nature().events()) {
            (void)s;
            add(lang::Expr::nat(name));
        }
        close();
    }

    /// Events of depth ≤ the current depth, each with one expression defining it.
    const std::map<Subset, lang::Expr>& events() const { return events_; }
    std::size_t depth() const { return depth_; }

    /// Adds B_i^p(φ) for every event, player and achieved value, then closes under
    /// negation and conjunction.
    void deepen() {
        std::vector<lang::Expr> fresh;
        for (const auto& [e, expr] : events_)
            for (std::size_t i = 0; i < space_.players().size(); ++i) {
                std::set<Rational> values;
                for (std::size_t m = 0; m < space_.size(); ++m) values.insert(measure::measure_of(space_.type(i, m), e));
                for (const auto& p : values) fresh.push_back(lang::Expr::bel(space_.players()[i], p, expr));
            }
        limit_ = depth_ + 1;
        for (const auto& f : fresh) add(f);
        close();
        ++depth_;
    }

    /// States related iff no event separates them, numbered by minimal state.
    std::vector<std::size_t> partition() const {
        std::vector<std::size_t> label(space_.size(), SIZE_MAX);
        std::size_t next = 0;
        for (std::size_t m = 0; m < space_.size(); ++m) {
            if (label[m] != SIZE_MAX) continue;
            for (std::size_t k = m; k < space_.size(); ++k) {
                bool same = true;
                for (const auto& [e, expr] : events_) same = same && e.test(m) == e.test(k);
                if (same) label[k] = next;
            }
            ++next;
        }
        return label;
    }

private:
    void add(const lang::Expr& e) {
        const Subset& s = eval_(e);
        if (lang::depth(e) > limit_) throw std::logic_error("oracle expression too deep");
        events_.emplace(s, e);
    }

    void close() {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<lang::Expr> exprs;
            for (const auto& [s, e] : events_) exprs.push_back(e);
            std::size_t before = events_.size();
            for (const auto& a : exprs) {
                add(lang::Expr::neg(a));
                for (const auto& b : exprs) add(lang::Expr::conj({a, b}));
            }
            grew = events_.size() != before;
        }
    }

    const types::TypeSpace& space_;
    lang::Evaluator eval_;
    std::map<Subset, lang::Expr> events_;
    std::size_t depth_ = 0;
    std::size_t limit_ = 0;
};

} // namespace testing
