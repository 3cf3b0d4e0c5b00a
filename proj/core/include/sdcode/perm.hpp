// Permutations on up to 128 points and permutation-group utilities
// (Schreier-Sims base/strong-generator chains, orbits, uniform sampling).
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sdcode {

// Images stored directly: p[i] is where point i goes. Composition (p*q) means
// "apply q first, then p", matching left action p(q(x)).
class Perm {
  public:
    Perm() = default;
    explicit Perm(int degree) : img_(degree) {
        for (int i = 0; i < degree; ++i) img_[i] = (std::uint8_t)i;
    }
    static Perm identity(int degree) { return Perm(degree); }
    static Perm from_images(const std::vector<int>& images);
    // Cycle notation with 1-based points, e.g. "(1,4)(2,5,3)"; degree given
    // explicitly since fixed points are omitted from the notation.
    static Perm from_cycles(const std::string& s, int degree);

    int degree() const { return (int)img_.size(); }
    int operator[](int i) const { return img_[i]; }
    bool is_identity() const;

    Perm operator*(const Perm& o) const;  // this after o
    Perm inverse() const;
    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return !(*this == o); }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    std::string to_cycles() const;  // 1-based; "()" for identity

    // Cycle type as sorted (length, count) pairs, fixed points included.
    std::vector<std::pair<int, int>> cycle_type() const;

  private:
    std::vector<std::uint8_t> img_;
};

// Schreier-Sims stabilizer chain. Degree <= 128; orders fit in uint64 for all
// groups used here (checked).
class PermGroup {
  public:
    explicit PermGroup(int degree);
    static PermGroup generated_by(const std::vector<Perm>& gens, int degree);
    // Chain whose base starts with the given points in order (points with
    // trivial orbit allowed). Strong generators stored past level k then fix
    // base_prefix[0..k-1] pointwise.
    static PermGroup with_base(const std::vector<int>& base_prefix, const std::vector<Perm>& gens,
                               int degree);

    int degree() const { return degree_; }
    std::uint64_t order() const;
    bool contains(const Perm& p) const;
    void extend(const Perm& g);  // add a generator, updating the chain
    const std::vector<Perm>& generators() const { return gens_; }
    // Generators of the pointwise stabilizer of the first `fixed` base points
    // (the chain's own base; meaningful with with_base()).
    std::vector<Perm> stabilizer_gens(int fixed) const;

    // Orbit of a point under the whole group.
    std::vector<int> orbit_of(int point) const;

    Perm random_element(std::mt19937_64& rng) const;  // uniform via transversals

  private:
    struct Level {
        int base_point = -1;
        std::vector<int> orbit;                 // orbit of base point
        std::vector<std::optional<Perm>> u;     // transversal: u[x] maps base->x
        std::vector<Perm> gens;                 // strong generators assigned here
    };
    // Stabilizer generators at level li are the union of gens at levels >= li;
    // a generator assigned to level li fixes the bases of levels 0..li-1.
    std::vector<Perm> level_stab_gens(int li) const;
    void rebuild_orbit(int li);
    void insert_strong(const Perm& s);
    bool process_level(int li);
    void close_chain();
    // Strip p through the chain; returns residue and the level it stuck at.
    std::pair<Perm, int> strip(const Perm& p) const;

    int degree_;
    std::vector<Perm> gens_;
    std::vector<Level> levels_;
};

// Orbits of a set of points {0..n_points-1} under generator images.
std::vector<std::vector<int>> point_orbits(const std::vector<Perm>& gens, int n_points);

// Orbit representatives of c-subsets of {0..n-1} under the group generated by
// gens; reps are lexicographically least in their orbit, returned as sorted
// index lists. Requires n <= 32.
std::vector<std::vector<int>> orbit_reps_on_subsets(const std::vector<Perm>& gens, int n, int c);

// One representative per double coset left*t*right in the symmetric group of
// the given degree, by BFS over all degree! permutations. Requires degree <= 12.
// Representatives are the lexicographically least element of each coset;
// their union of cosets covers the whole symmetric group (checked internally).
std::vector<Perm> double_coset_reps(const std::vector<Perm>& left_gens,
                                    const std::vector<Perm>& right_gens, int degree);

}  // namespace sdcode
