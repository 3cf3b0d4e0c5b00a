// Arithmetic in R_p = F2[x]/(x^p - 1) for odd primes p <= 31, the splitting
// x^p - 1 = (x+1) h_1 ... h_s, and codes over the even-weight ideal
// P = I_1 + ... + I_s where I_j = ((x^p-1)/h_j) is a field of order 2^deg(h_j).
//
// A RingElement is a bit mask: bit i = coefficient of x^i. Serialized as a
// p-character 0/1 string with the coefficient of x^i at position i.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdcode/gf2core.hpp"

namespace sdcode {

using RingElement = std::uint32_t;

struct IdealSystem {
    int p = 0;
    int ord2 = 0;                          // multiplicative order of 2 mod p, = deg h_j
    std::vector<std::uint64_t> factors;    // h_1..h_s as coefficient masks, sorted
    std::vector<RingElement> generators;   // generator polynomial of I_j, reduced mod x^p-1
    std::vector<RingElement> idempotents;  // identity e_j of I_j
    RingElement unity_complement = 0;      // idempotent of the (x+1)-component: 1+x+...+x^{p-1}

    int s() const { return (int)factors.size(); }
    RingElement x_gen(int j) const;        // x * e_j, a generator of the cyclic group <x e_j>
};

// Splits x^p - 1 over F2 (Berlekamp) and computes ideal data. p must be an odd
// prime <= 31.
IdealSystem factor_cyclotomic(int p);

RingElement ring_add(RingElement a, RingElement b);
RingElement ring_mul(RingElement a, RingElement b, int p);
// a(x) -> a(x^t); requires gcd(t, p) = 1.
RingElement substitute(RingElement a, int t, int p);
// a(x) -> a(x^{-1}).
RingElement conjugate(RingElement a, int p);
int ring_weight(RingElement a);

std::string ring_to_string(RingElement a, int p);
RingElement ring_from_string(const std::string& s);

// Field operations inside I_j (element must satisfy a * e_j = a).
RingElement field_inverse(RingElement a, int j, const IdealSystem& sys);
RingElement field_pow(RingElement a, std::uint64_t e, int j, const IdealSystem& sys);
// Discrete log of a with respect to x*e_j (order p); -1 if a is not a power.
int shift_log(RingElement a, int j, const IdealSystem& sys);

// Hermitian-style pairing used throughout: sum_i u_i * conjugate(v_i).
RingElement form_value(const std::vector<RingElement>& u, const std::vector<RingElement>& v, int p);

// A code over P of block length c: binary row span of `rows` inside P^c,
// closed under coordinate-wise multiplication by x (checked where required).
struct ModuleCode {
    int p = 0;
    int c = 0;
    std::vector<std::vector<RingElement>> rows;

    int bits() const { return p * c; }
    BinaryCode binary_image() const;       // length p*c, RREF of the row span
    bool is_module_closed() const;         // span stable under x * (.)
    ModuleCode module_closure() const;     // span of all x^t * rows, reduced

    // Rows reconstructed from the RREF binary image; deterministic.
    ModuleCode reduced() const;

    std::string to_text() const;           // "p c rows" header, then matrix lines
    static ModuleCode from_text(const std::string& text);
};

ModuleCode module_from_binary(const BinaryCode& b, int p);

// Component M_j = M * e_j for each ideal, reduced. M must be module-closed.
std::vector<ModuleCode> module_decompose(const ModuleCode& m, const IdealSystem& sys);

// Dimension of a component over its field I_j (binary rank / deg h_j).
int module_dim(const ModuleCode& component, const IdealSystem& sys);

struct HermitianCheck {
    bool pairing_ok = false;   // form_value vanishes on all generator pairs
    bool dimension_ok = false; // sum of component dims = c*s/2
    bool ok() const { return pairing_ok && dimension_ok; }
};
HermitianCheck hermitian_selfdual_check(const ModuleCode& m, const IdealSystem& sys);

}  // namespace sdcode
