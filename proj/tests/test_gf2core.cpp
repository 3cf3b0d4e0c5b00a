#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "sdcode/gf2core.hpp"
#include "sdcode/perm.hpp"

using namespace sdcode;

namespace {

BinaryCode random_selfdual(int n, std::mt19937_64& rng) {
    // Random symmetric A gives a self-dual [2m, m] code (I | A) with
    // diag(A) = 0 adjusted: rows orthogonal iff A A^T = I ... build instead by
    // gluing random pairs: start from (I|I) and apply random row ops plus a
    // random permutation. Row ops preserve the code; permutations preserve
    // self-duality.
    int m = n / 2;
    std::vector<BitVector> rows;
    for (int i = 0; i < m; ++i) {
        BitVector v(n);
        v.set(i, true);
        v.set(m + i, true);
        rows.push_back(v);
    }
    BinaryCode c = BinaryCode::from_rows(n, rows);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    return c.permuted(Perm::from_images(img));
}

}  // namespace

TEST_CASE("bit vector basics") {
    BitVector v(10);
    CHECK(v.zero());
    v.set(3, true);
    v.set(9, true);
    CHECK(v.weight() == 2);
    CHECK(v.get(3));
    CHECK(v.lowest() == 3);
    v.flip(3);
    CHECK(v.lowest() == 9);
    CHECK(v.to_string() == "0000000001");
    CHECK(BitVector::from_string("0000000001") == v);
    CHECK_THROWS(BitVector(129));
}

TEST_CASE("bit vector crosses the word boundary") {
    BitVector v(128);
    v.set(63, true);
    v.set(64, true);
    v.set(127, true);
    CHECK(v.weight() == 3);
    BitVector u(128);
    u.set(64, true);
    CHECK(v.dot(u) == 1);
    v ^= u;
    CHECK(v.weight() == 2);
    CHECK(v.lowest() == 63);
}

TEST_CASE("rref is idempotent and rank-correct") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + (int)(rng() % 60);
        int k = 1 + (int)(rng() % 12);
        std::vector<BitVector> rows;
        for (int i = 0; i < k; ++i) {
            BitVector v(n);
            for (int j = 0; j < n; ++j) {
                if (rng() & 1) v.set(j, true);
            }
            rows.push_back(v);
        }
        RrefResult r = rref(rows, n);
        CHECK(r.rank == (int)r.rows.size());
        CHECK(r.rank <= std::min(n, k));
        RrefResult again = rref(r.rows, n);
        CHECK(again.rows == r.rows);
        for (std::size_t i = 1; i < r.pivots.size(); ++i) CHECK(r.pivots[i - 1] < r.pivots[i]);
        // Pivot columns are unit columns.
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            for (std::size_t j = 0; j < r.rows.size(); ++j)
                CHECK(r.rows[j].get(r.pivots[i]) == (i == j));
        }
    }
}

TEST_CASE("combination kernel spans exactly the vanishing combinations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + (int)(rng() % 20);
        int k = 2 + (int)(rng() % 10);
        std::vector<BitVector> rows;
        for (int i = 0; i < k; ++i) {
            BitVector v(n);
            for (int j = 0; j < n; ++j) {
                if (rng() & 1) v.set(j, true);
            }
            rows.push_back(v);
        }
        auto kernel = combination_kernel(rows, n);
        int rank = rref(rows, n).rank;
        CHECK((int)kernel.size() == k - rank);
        for (const auto& tag : kernel) {
            BitVector sum(n);
            for (int i = 0; i < k; ++i) {
                if (tag.get(i)) sum ^= rows[i];
            }
            CHECK(sum.zero());
        }
        // Tags are independent.
        CHECK(rref(kernel, k).rank == (int)kernel.size());
    }
}

TEST_CASE("extended Hamming [8,4] weight enumerator and minimum weight") {
    BinaryCode c = BinaryCode::from_strings(
        8, {"10000111", "01001011", "00101101", "00011110"});
    CHECK(c.is_self_dual());
    WeightDistribution wd = weight_distribution(c);
    CHECK(wd.at(0) == 1);
    CHECK(wd.at(4) == 14);
    CHECK(wd.at(8) == 1);
    CHECK(wd.at(2) == 0);
    CHECK(wd.at(6) == 0);
    auto mw = min_weight(c);
    REQUIRE(mw.has_value());
    CHECK(mw->weight == 4);
    CHECK(mw->witness.weight() == 4);
    CHECK(c.contains(mw->witness));
}

TEST_CASE("weight distribution agrees with codeword scan on random codes") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 6 + (int)(rng() % 14);
        int k = 2 + (int)(rng() % 5);
        std::vector<BitVector> rows;
        for (int i = 0; i < k; ++i) {
            BitVector v(n);
            for (int j = 0; j < n; ++j) {
                if (rng() & 1) v.set(j, true);
            }
            rows.push_back(v);
        }
        BinaryCode c = BinaryCode::from_rows(n, rows);
        WeightDistribution wd = weight_distribution(c);
        std::uint64_t total = 0;
        for (int w = 0; w <= n; ++w) total += wd.at(w);
        CHECK(total == (std::uint64_t)1 << c.k());
        std::vector<int> all_weights(n + 1);
        for (int w = 0; w <= n; ++w) all_weights[w] = w;
        auto words = codewords_of_weights(c, all_weights);
        CHECK(words.size() == total);
    }
}

TEST_CASE("dual and self-duality") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryCode c = random_selfdual(8 + 2 * (int)(rng() % 9), rng);
        CHECK(c.is_self_dual());
        CHECK(c.dual() == c);
    }
    BinaryCode rep = BinaryCode::from_strings(6, {"110000", "001100"});
    BinaryCode d = rep.dual();
    CHECK(d.k() == 4);
    for (const auto& r : rep.rows()) {
        for (const auto& s : d.rows()) CHECK(r.dot(s) == 0);
    }
    CHECK(d.dual() == rep);
}

TEST_CASE("permuted preserves weights and composes") {
    std::mt19937_64 rng(41);
    BinaryCode c = random_selfdual(16, rng);
    std::vector<int> img(16);
    for (int i = 0; i < 16; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    Perm g = Perm::from_images(img);
    BinaryCode pc = c.permuted(g);
    CHECK(weight_distribution(pc).counts == weight_distribution(c).counts);
    CHECK(pc.permuted(g.inverse()) == c);
}

TEST_CASE("extremal bound") {
    CHECK(extremal_bound(24) == 8);
    CHECK(extremal_bound(44) == 8);
    CHECK(extremal_bound(22) == 10);  // the n = 22 mod 24 exception
    CHECK(extremal_bound(48) == 12);
}

TEST_CASE("generator matrix text round trip") {
    BinaryCode c = BinaryCode::from_strings(
        8, {"10000111", "01001011", "00101101", "00011110"});
    std::istringstream in(c.to_text());
    BinaryCode back = read_gm_text(in);
    CHECK(back == c);
    std::istringstream messy("# comment\n\n8 2\n1 0 0 0 0 1 1 1\n01001011\n");
    BinaryCode m = read_gm_text(messy);
    CHECK(m.n() == 8);
    CHECK(m.k() == 2);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
    // Standard FNV-1a 64-bit reference values.
    CHECK(fnv1a64(std::string("")) == 0xcbf29ce484222325ull);
    CHECK(fnv1a64(std::string("a")) == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64(std::string("foobar")) == 0x85944171f73967e8ull);
    CHECK(hex64(0xcbf29ce484222325ull) == "cbf29ce484222325");
}
