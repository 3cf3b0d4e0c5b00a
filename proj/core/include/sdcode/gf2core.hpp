// Bit-packed linear algebra over GF(2) for block codes of length <= 128.
// Convention: coordinate i of a vector lives at bit i (little-endian within
// 64-bit words), word 0 holds coordinates 0..63.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdcode {

constexpr int kMaxLen = 128;

struct BitVector {
    int n = 0;
    std::array<std::uint64_t, 2> w{0, 0};

    BitVector() = default;
    explicit BitVector(int len) : n(len) {
        if (len < 0 || len > kMaxLen) throw std::invalid_argument("BitVector: bad length");
    }

    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
    }
    void flip(int i) { w[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVector& operator^=(const BitVector& o) { w[0] ^= o.w[0]; w[1] ^= o.w[1]; return *this; }
    friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }

    int weight() const { return __builtin_popcountll(w[0]) + __builtin_popcountll(w[1]); }
    bool zero() const { return (w[0] | w[1]) == 0; }
    // GF(2) inner product.
    int dot(const BitVector& o) const {
        return (__builtin_popcountll(w[0] & o.w[0]) + __builtin_popcountll(w[1] & o.w[1])) & 1;
    }
    // Position of lowest set bit, -1 if zero.
    int lowest() const {
        if (w[0]) return __builtin_ctzll(w[0]);
        if (w[1]) return 64 + __builtin_ctzll(w[1]);
        return -1;
    }

    bool operator==(const BitVector& o) const { return n == o.n && w == o.w; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }
    // Lexicographic by coordinate 0 first (i.e. numeric on reversed bits is not
    // needed anywhere; this order only has to be fixed and total).
    bool operator<(const BitVector& o) const {
        if (w[1] != o.w[1]) return w[1] < o.w[1];
        return w[0] < o.w[0];
    }

    std::string to_string() const {
        std::string s(n, '0');
        for (int i = 0; i < n; ++i) if (get(i)) s[i] = '1';
        return s;
    }
    static BitVector from_string(const std::string& s);
};

struct RrefResult {
    std::vector<BitVector> rows;   // reduced rows, zero rows dropped
    std::vector<int> pivots;       // pivot column of each row, strictly increasing
    int rank = 0;
};

// Reduced row echelon form; deterministic (pivot = first nonzero column scan).
RrefResult rref(std::vector<BitVector> rows, int n);

// Basis of the row combinations summing to zero, as tag vectors over the row
// indices (tag bit i set = row i participates).
std::vector<BitVector> combination_kernel(const std::vector<BitVector>& rows, int width);

struct WeightDistribution {
    int n = 0;
    std::vector<std::uint64_t> counts;  // counts[w] = number of codewords of weight w

    std::uint64_t at(int w) const { return (w >= 0 && w < (int)counts.size()) ? counts[w] : 0; }
    // Smallest nonzero weight with a codeword, std::nullopt for the zero code.
    std::optional<int> min_weight() const {
        for (int i = 1; i <= n; ++i) if (counts[i]) return i;
        return std::nullopt;
    }
    bool operator==(const WeightDistribution& o) const = default;
};

class Perm;  // perm.hpp

// A binary linear code held as the RREF basis of its row space. Construction
// reduces arbitrary generator rows; rank-deficient input is accepted and only
// flagged. Equality of objects is equality of codes.
class BinaryCode {
  public:
    BinaryCode() = default;
    static BinaryCode from_rows(int n, const std::vector<BitVector>& rows);
    static BinaryCode from_strings(int n, const std::vector<std::string>& rows);

    int n() const { return n_; }
    int k() const { return (int)rows_.size(); }
    bool rank_deficient_input() const { return rank_deficient_; }
    const std::vector<BitVector>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const BitVector& v) const;
    bool operator==(const BinaryCode& o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator!=(const BinaryCode& o) const { return !(*this == o); }

    BinaryCode dual() const;
    BinaryCode permuted(const Perm& p) const;

    bool is_self_orthogonal() const;
    bool is_self_dual() const { return 2 * k() == n() && is_self_orthogonal(); }

    // Deterministic text serialization: "n k" header plus one row per line.
    std::string to_text() const;

  private:
    int n_ = 0;
    std::vector<BitVector> rows_;
    std::vector<int> pivots_;
    bool rank_deficient_ = false;
};

// Full weight spectrum by Gray-code sweep over all 2^k codewords.
// Guarded: throws if k exceeds max_dim.
WeightDistribution weight_distribution(const BinaryCode& c, int max_dim = 24);

struct MinWeightResult {
    int weight = 0;
    BitVector witness;  // codeword of that weight
};

// Minimum nonzero weight. Returns std::nullopt for the zero code. If
// early_exit_below is positive, returns immediately with any codeword of
// weight < early_exit_below once one is seen (the reported value is then just
// that witness weight, not necessarily the true minimum).
std::optional<MinWeightResult> min_weight(const BinaryCode& c, int early_exit_below = 0,
                                          int max_dim = 24);

// All codewords whose weight appears in `weights`, via one Gray-code sweep.
// Guarded: throws if k exceeds max_dim.
std::vector<BitVector> codewords_of_weights(const BinaryCode& c, const std::vector<int>& weights,
                                            int max_dim = 24);

// Largest possible minimum weight of a self-dual [n,n/2] code:
// 4*floor(n/24)+4, except +6 when n = 22 (mod 24).
int extremal_bound(int n);

// Generator-matrix text format: optional "n k" header, k lines over {0,1};
// '#' starts a comment, blank lines ignored.
BinaryCode read_gm_text(std::istream& in, const std::string& what = "generator matrix");
BinaryCode read_gm_file(const std::string& path);
void write_gm_file(const BinaryCode& c, const std::string& path,
                   const std::vector<std::string>& comments = {});

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

}  // namespace sdcode
