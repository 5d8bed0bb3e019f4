#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ftspace {

/// Subset of a finite universe {0, ..., n-1}; bit k set iff element k belongs.
using Subset = boost::dynamic_bitset<>;

inline Subset make_subset(std::size_t n, std::initializer_list<std::size_t> elems) {
    Subset s(n);
    for (auto e : elems) s.set(e);
    return s;
}

inline Subset make_subset(std::size_t n, const std::vector<std::size_t>& elems) {
    Subset s(n);
    for (auto e : elems) s.set(e);
    return s;
}

inline Subset full_subset(std::size_t n) {
    Subset s(n);
    s.set();
    return s;
}

inline std::vector<std::size_t> elements(const Subset& s) {
    std::vector<std::size_t> out;
    out.reserve(s.count());
    for (auto k = s.find_first(); k != Subset::npos; k = s.find_next(k)) out.push_back(k);
    return out;
}

/// Preimage f^{-1}(target) for a total map f given as a vector of images.
inline Subset preimage(const std::vector<std::size_t>& f, const Subset& target) {
    Subset out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        if (target.test(f[k])) out.set(k);
    return out;
}

/// "{0,2,5}" style rendering, used in error messages.
std::string to_string(const Subset& s);

} // namespace ftspace
