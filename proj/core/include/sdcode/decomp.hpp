// Decomposition of a binary code along an automorphism of odd prime order p
// with c p-cycles and f fixed points: the fixed subcode projects to a length
// c+f binary code, the cycle subcode maps onto a module over F2[x]/(x^p - 1),
// and the pair reassembles the original code.
#pragma once

#include <string>
#include <vector>

#include "sdcode/cyclotomic.hpp"
#include "sdcode/gf2core.hpp"
#include "sdcode/perm.hpp"

namespace sdcode {

// Order-p permutation stored with its cycle layout: cycles[i] lists the p
// coordinates of cycle i in action order (starting at the smallest), fixed
// lists fixed coordinates ascending. The standard layout puts the cycles on
// the leading coordinates.
struct AutomorphismSpec {
    int p = 0;
    int c = 0;
    int f = 0;
    std::vector<std::vector<int>> cycles;
    std::vector<int> fixed;

    int n() const { return p * c + f; }
    Perm to_perm() const;
    bool fixes(const BinaryCode& code) const;

    static AutomorphismSpec from_perm(const Perm& g, int p);
    static AutomorphismSpec standard(int p, int c, int f);

    // "p=7 c=6 f=2" headline; full form appends the cycle layout.
    std::string describe() const;
    std::string serialize() const;
    static AutomorphismSpec parse(const std::string& text);
    // "p=7,c=6,f=2" with the standard layout.
    static AutomorphismSpec parse_compact(const std::string& text);
};

struct SplitResult {
    BinaryCode fixed_subcode;  // codewords constant on every cycle
    BinaryCode cycle_subcode;  // codewords with even weight on every cycle, zero on fixed points
};

// C = fixed_subcode (+) cycle_subcode for any code fixed by the automorphism
// (p odd). Checked: throws if the direct sum does not recover C.
SplitResult split(const BinaryCode& code, const AutomorphismSpec& sigma);

// Projection of a cycle-constant word: one coordinate per cycle, then the
// fixed coordinates.
BinaryCode project_pi(const BinaryCode& fixed_subcode, const AutomorphismSpec& sigma);
// Inverse lift back to length n (cycle values replicated along cycles).
BinaryCode lift_pi(const BinaryCode& c_pi, const AutomorphismSpec& sigma);

// Cycle words as ring elements: cycle i of word v becomes sum of v[cycle[t]] x^t.
ModuleCode map_phi(const BinaryCode& cycle_subcode, const AutomorphismSpec& sigma);
BinaryCode lift_phi(const ModuleCode& c_phi, const AutomorphismSpec& sigma);

// Conditions for a (c_pi, c_phi) pair to assemble into a self-dual code:
// c_pi self-dual; c_phi x-closed with even-weight components, of binary
// dimension c(p-1)/2, with every generator pair orthogonal under the
// conjugate-linear form sum u_i(x) v_i(x^-1).
struct CompatibilityCheck {
    bool pi_self_dual = false;
    bool phi_module_closed = false;
    bool phi_components_even = false;
    bool phi_dimension = false;
    bool phi_pairing = false;
    bool ok() const {
        return pi_self_dual && phi_module_closed && phi_components_even && phi_dimension &&
               phi_pairing;
    }
};

CompatibilityCheck check_compatibility(const BinaryCode& c_pi, const ModuleCode& c_phi);

// Span of lift_pi(c_pi) and lift_phi(c_phi).
BinaryCode assemble(const BinaryCode& c_pi, const ModuleCode& c_phi,
                    const AutomorphismSpec& sigma);

// Subcode of c_pi vanishing on the leading c coordinates, restricted to the
// trailing block.
BinaryCode fixed_block_kernel(const BinaryCode& c_pi, int c);

// Block structure of a code split into a leading block of c coordinates and
// the trailing block: the largest subcodes supported on a single block, the
// block projections of the full code, and the mixed rank shared between them.
// For a self-dual code each block projection is the dual of the opposite
// block's core, and mixed_rank is the same on both sides.
struct PiStructure {
    int left_dim = 0;    // dimension of the left-supported subcode
    int right_dim = 0;   // dimension of the right-supported subcode
    int mixed_rank = 0;  // k - left_dim - right_dim
    BinaryCode left_core;    // left-supported subcode, restricted to the left block
    BinaryCode right_core;   // right-supported subcode, restricted to the right block
    BinaryCode left_span;    // projection of the whole code onto the left block
    BinaryCode right_span;   // projection of the whole code onto the right block
};

PiStructure pi_structure(const BinaryCode& c_pi, int c);

// All self-dual codes of length c+f whose fixed-block kernel is exactly the
// given self-orthogonal code d (length f, dimension (f-c)/2): generators
// [0|d] plus [I_c|F] with the rows of F an orthonormal basis of dual(d)/d.
// Distinct codes only; empty when no orthonormal basis exists.
std::vector<BinaryCode> selfdual_lifts(const BinaryCode& d, int c);

}  // namespace sdcode
