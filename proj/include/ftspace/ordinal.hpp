#pragma once

// Ordinals below ω^ω in Cantor normal form, and records: 0/1 sequences indexed by
// ordinals below a length, stored by their finite support.

#include <boost/container/small_vector.hpp>

#include <compare>
#include <span>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ftspace::sober {

enum class Parity { Even, Odd };

std::string to_string(Parity p);

class Ord {
public:
    struct Term {
        std::uint32_t exp;
        std::uint64_t coef;
        friend bool operator==(const Term&, const Term&) = default;
    };

    Ord() = default;
    Ord(std::uint64_t n);  // NOLINT: finite ordinals convert implicitly
    /// ω^e · c
    static Ord omega_power(std::uint32_t e, std::uint64_t c = 1);
    static Ord omega() { return omega_power(1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const { return terms_.empty() || terms_.front().exp == 0; }
    /// The n in γ = λ̂ + n.
    std::uint64_t finite_part() const;
    /// λ̂: γ with its finite part dropped.
    Ord limit_part() const;
    bool is_limit() const { return !is_zero() && finite_part() == 0; }
    bool is_successor() const { return finite_part() > 0; }
    /// Throws DomainError unless successor.
    Ord predecessor() const;
    Parity parity() const { return finite_part() % 2 == 0 ? Parity::Even : Parity::Odd; }
    /// Value of a finite ordinal; throws DomainError otherwise.
    std::uint64_t to_finite() const;

    /// Ordinal (non-commutative) addition.
    Ord operator+(const Ord& rhs) const;
    Ord succ() const { return *this + Ord(1); }

    std::span<const Term> terms() const { return {terms_.data(), terms_.size()}; }

    friend bool operator==(const Ord& a, const Ord& b) { return a.terms_ == b.terms_; }
    friend std::strong_ordering operator<=>(const Ord& a, const Ord& b);

    /// "0", "5", "w", "w*2+3", "w^2*3+w+5"
    std::string to_string() const;
    /// Accepts the to_string form; terms may be written in any order and are summed.
    static Ord parse(std::string_view text);

private:
    boost::container::small_vector<Term, 2> terms_;
};

class Record {
public:
    Record() = default;
    /// Throws DomainError if a support position is not below the length.
    Record(Ord length, std::vector<Ord> support);

    const Ord& length() const { return length_; }
    std::span<const Ord> support() const { return {support_.data(), support_.size()}; }

    /// r(pos). Throws DomainError if pos is not below the length.
    bool at(const Ord& pos) const;
    /// r ↾ beta. Throws DomainError if beta exceeds the length.
    Record restrict(const Ord& beta) const;
    Record with(const Ord& pos, bool value) const;

    friend bool operator==(const Record&, const Record&) = default;

private:
    Ord length_;
    boost::container::small_vector<Ord, 6> support_;  // sorted, distinct
};

/// o^λ(r): least ordinal below λ after which r vanishes up to λ. Throws DomainError
/// unless λ is a limit not exceeding the length.
Ord o_lambda(const Record& r, const Ord& lambda);
Parity lambda_parity(const Record& r, const Ord& lambda);

} // namespace ftspace::sober
