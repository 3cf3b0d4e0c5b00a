// Equivalence of binary codes under coordinate permutations: canonical keys,
// witness maps, and automorphism groups. A coordinate coloring restricts all
// of these to permutations preserving each color class; color values are
// significant and matched across codes.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdcode/gf2core.hpp"
#include "sdcode/perm.hpp"

namespace sdcode {

struct AutGroupResult {
    std::vector<Perm> gens;  // generate the full (colored) automorphism group
    std::uint64_t order = 1;
};

// Color-preserving coordinate permutations mapping the code onto itself.
// Order is exact (orbit-stabilizer chain, cross-checked against an
// independent Schreier-Sims computation of the generated group).
AutGroupResult automorphism_group(const BinaryCode& code, const std::vector<int>& coloring = {});

struct CanonicalResult {
    Perm labeling;       // input coordinate i moves to position labeling[i]
    std::string key;     // equal iff codes are equivalent (colors respected)
    AutGroupResult aut;  // computed along the way
};

CanonicalResult canonical_form(const BinaryCode& code, const std::vector<int>& coloring = {});
std::string canonical_key(const BinaryCode& code, const std::vector<int>& coloring = {});

// Witness g with a.permuted(g) == b, or nullopt when inequivalent.
std::optional<Perm> equivalence_map(const BinaryCode& a, const BinaryCode& b,
                                    const std::vector<int>& coloring_a = {},
                                    const std::vector<int>& coloring_b = {});

bool codes_equivalent(const BinaryCode& a, const BinaryCode& b);

// Exhaustive n!-sweep oracles; n <= 10.
bool brute_force_equivalent(const BinaryCode& a, const BinaryCode& b);
std::uint64_t brute_force_aut_order(const BinaryCode& c);

}  // namespace sdcode
