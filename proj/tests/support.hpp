#pragma once

// Shared helpers for the test programs: random fields, measures and type spaces
// drawn from a seeded mt19937, and fixture loading.

#include "ftspace/document.hpp"
#include "ftspace/measure.hpp"
#include "ftspace/typespace.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace ftspace;
using measure::FAMeasure;
using measure::SetField;
using types::TypeSpace;

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline TypeSpace load_fixture(const std::string& name) { return doc::load_space(doc::read_file(fixture(name))); }

/// Valid type spaces with at most six states, in a fixed order.
inline std::vector<std::string> space_fixtures() {
    return {"singleton_h.json", "singleton_h_alt.json", "two_uniform.json", "three_distinct.json",
            "duplicated.json",  "coarse_field.json",    "mixed4.json",      "three_events.json"};
}

/// Block label per element of a random partition of {0..n-1} into at most `max_blocks`.
inline std::vector<std::size_t> random_labels(std::mt19937& rng, std::size_t n, std::size_t max_blocks) {
    std::uniform_int_distribution<std::size_t> pick(0, max_blocks - 1);
    std::vector<std::size_t> labels(n);
    for (auto& l : labels) l = pick(rng);
    return labels;
}

inline SetField field_from_labels(const std::vector<std::size_t>& labels) {
    std::vector<Subset> atoms;
    std::vector<std::size_t> seen;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        auto it = std::find(seen.begin(), seen.end(), labels[k]);
        if (it != seen.end()) continue;
        seen.push_back(labels[k]);
        Subset a(labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j)
            if (labels[j] == labels[k]) a.set(j);
        atoms.push_back(a);
    }
    return SetField::from_atoms(labels.size(), atoms);
}

inline SetField random_field(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> blocks(1, n);
    return field_from_labels(random_labels(rng, n, blocks(rng)));
}

/// Weights with denominator dividing `den`, some atoms possibly null.
inline FAMeasure random_measure(std::mt19937& rng, const SetField& f, unsigned den = 12) {
    std::vector<unsigned> cuts(f.atom_count(), 0);
    std::uniform_int_distribution<std::size_t> which(0, f.atom_count() - 1);
    for (unsigned k = 0; k < den; ++k) ++cuts[which(rng)];
    std::vector<Rational> w;
    for (auto c : cuts) w.emplace_back(c, den);
    for (auto& x : w) x.canonicalize();
    return FAMeasure(f, w);
}

inline Subset random_subset(std::mt19937& rng, std::size_t n) {
    std::bernoulli_distribution coin(0.5);
    Subset s(n);
    for (std::size_t k = 0; k < n; ++k)
        if (coin(rng)) s.set(k);
    return s;
}

/// A valid space: for each player a random partition of the states, and on each
/// block one measure supported inside the block (so introspection holds).
inline TypeSpace random_space(std::mt19937& rng, std::size_t n, std::size_t players = 2) {
    auto nature = types::coin_nature();
    std::uniform_int_distribution<std::size_t> coin(0, 1);
    std::vector<std::size_t> theta(n);
    for (auto& t : theta) t = coin(rng);
    std::vector<std::string> states, names;
    for (std::size_t k = 0; k < n; ++k) states.push_back("s" + std::to_string(k));
    auto field = SetField::powerset(n);
    std::vector<std::vector<FAMeasure>> types;
    for (std::size_t i = 0; i < players; ++i) {
        names.push_back(std::string(1, static_cast<char>('a' + i)));
        auto labels = random_labels(rng, n, n);
        std::vector<FAMeasure> t(n, measure::point_mass(0, field));
        std::vector<bool> done(n, false);
        for (std::size_t m = 0; m < n; ++m) {
            if (done[m]) continue;
            std::vector<Rational> w(n);
            std::vector<std::size_t> block;
            for (std::size_t k = 0; k < n; ++k)
                if (labels[k] == labels[m]) block.push_back(k);
            std::uniform_int_distribution<std::size_t> which(0, block.size() - 1);
            for (int c = 0; c < 4; ++c) w[block[which(rng)]] += Rational(1, 4);
            FAMeasure mu(field, w);
            for (auto k : block) {
                t[k] = mu;
                done[k] = true;
            }
        }
        types.push_back(std::move(t));
    }
    return TypeSpace(nature, names, states, field, theta, std::move(types));
}

} // namespace testing
