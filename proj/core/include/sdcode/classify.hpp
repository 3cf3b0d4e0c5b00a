// Classification driver: enumerates self-dual [44,22,8] codes with an
// automorphism of odd prime order from their projected-code / module-code
// decompositions, deduplicates up to equivalence, and reports per-family
// counts with automorphism orders and construction provenance.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdcode/catalog.hpp"
#include "sdcode/cyclotomic.hpp"
#include "sdcode/decomp.hpp"
#include "sdcode/equiv.hpp"
#include "sdcode/gf2core.hpp"
#include "sdcode/perm.hpp"

namespace sdcode {

// Extremal [44,22,8] weight enumerators come in two one-parameter families:
// A8 = 44 + 4b with A10 = 976 - 8b (family 1) or A10 = 1232 - 8b (family 2).
struct BetaProfile {
    int family = 0;  // 1 or 2
    int beta = 0;
    std::string label() const { return family == 1 ? "W1" : "W2"; }
};
std::optional<BetaProfile> beta_profile(const WeightDistribution& w);

// --- semilinear cycle transformations --------------------------------------

// Acting on a module over P^c: apply the Frobenius substitution
// x -> x^(2^frobenius), move cycle j to rho(j), then multiply cycle i by
// x^shifts[i].
struct CycleTransform {
    Perm rho;
    std::vector<int> shifts;
    int frobenius = 0;
};

ModuleCode apply_transform(const ModuleCode& m, const CycleTransform& t);

// Generators of the group of cycle permutations that extend to a stabilizer
// of m by some choice of shifts and Frobenius power.
std::vector<Perm> transform_stabilizer_gens(const ModuleCode& m);

// An explicit transformation with apply_transform(a, t) == b, if any.
std::optional<CycleTransform> transform_between(const ModuleCode& a, const ModuleCode& b);

// --- order-7 module components ---------------------------------------------

// Representatives of the dimension-dim submodules of the first-field
// component on c cycles (p = 7) whose annihilator pair has minimum module
// weight >= 2 on both sides, up to cycle permutation, per-cycle shifts and
// Frobenius substitution.
std::vector<ModuleCode> component_reps(int c, int dim);

// Largest second-field component pairing to zero with m1 under
// sum u_i(x) v_i(x^-1); the two together span a compatible module code.
ModuleCode annihilator_component(const ModuleCode& m1);
ModuleCode join_components(const ModuleCode& m1, const ModuleCode& m2);

// --- reports ----------------------------------------------------------------

struct ClassifiedCode {
    BinaryCode code;
    std::string key;  // canonical key
    BetaProfile profile;
    std::uint64_t aut_order = 0;
    std::string provenance;
};

struct ProfileCount {
    std::string family;
    int beta = 0;
    int count = 0;
};

struct ClassificationReport {
    std::string spec_line;
    std::vector<ClassifiedCode> codes;            // sorted by (family, beta, key)
    std::vector<ProfileCount> histogram;          // sorted by (family, beta)
    std::vector<std::pair<std::string, int>> case_counts;  // per construction case
    std::map<std::string, std::string> input_checksums;
    double seconds = 0.0;

    void finalize();  // sort codes, build histogram
    // Deterministic text; timing goes on a trailing "# time" line only.
    std::string render(bool with_matrices) const;
};

struct ClassifyOptions {
    int threads = 1;
    bool progress = false;  // stderr progress notes
};

// Full order-7 type (6,2) classification; all inputs derived internally.
ClassificationReport classify_7_6_2(const ClassifyOptions& opt = {});

// Order-7 type (3,23) classification built on an imported dataset of the
// three self-orthogonal [23,10,8] codes.
ClassificationReport classify_7_3_23(const ImportedDataset& ds, const ClassifyOptions& opt = {});

// Full order-7 classification: both type runs, deduplicated by canonical key.
// A code whose automorphism group order is divisible by 7 exactly once has
// all its order-7 elements conjugate, so it shows up under only one type.
ClassificationReport classify_7(const ImportedDataset& ds, const ClassifyOptions& opt = {});

// Union of reports deduplicated by canonical key, keeping the first
// occurrence of each class; case counts and input checksums concatenate.
ClassificationReport merge_reports(const std::string& spec_line,
                                   const std::vector<const ClassificationReport*>& parts);

// Order-3 run restricted to one projected code (cycle block leading) and one
// module code: sweeps cycle-permutation double cosets only.
ClassificationReport classify_3_restricted(const BinaryCode& c_pi, int cycle_block,
                                           const ModuleCode& c_phi, const std::string& label,
                                           const ClassifyOptions& opt = {});

// Dispatch on a compact spec string. "p=7,c=6,f=2" runs the full order-7
// type (6,2) classification; "p=7,c=3,f=23" needs dataset_dir.
ClassificationReport classify_spec(const std::string& compact_spec, const std::string& dataset_dir,
                                   const ClassifyOptions& opt = {});

// Expected-count tables: lines "FAMILY BETA COUNT" plus "TOTAL N".
struct ExpectTable {
    std::vector<ProfileCount> lines;
    int total = -1;
};
ExpectTable read_expect(const std::string& path);
// Empty string when the report matches the table, else a mismatch description.
std::string check_expect(const ClassificationReport& rep, const ExpectTable& expect);

}  // namespace sdcode
