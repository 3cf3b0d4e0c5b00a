#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "sdcode/decomp.hpp"

using namespace sdcode;

namespace {

// Building-up: from self-dual C of length n and odd-weight x in F2^n, the
// span of (1 0 | x) and (x.r x.r | r) over rows r of C is self-dual of
// length n + 2. Seeded from {11}, this reaches a rich family.
BinaryCode random_self_dual(int n, std::mt19937_64& rng) {
    REQUIRE(n % 2 == 0);
    BinaryCode c = BinaryCode::from_strings(2, {"11"});
    while (c.n() < n) {
        int m = c.n();
        BitVector x(m);
        do {
            for (int i = 0; i < m; ++i) x.set(i, rng() & 1);
        } while (x.weight() % 2 == 0);
        std::vector<BitVector> rows;
        BitVector head(m + 2);
        head.set(0, true);
        for (int i = 0; i < m; ++i) head.set(2 + i, x.get(i));
        rows.push_back(head);
        for (const auto& r : c.rows()) {
            BitVector v(m + 2);
            bool hit = r.dot(x);
            v.set(0, hit);
            v.set(1, hit);
            for (int i = 0; i < m; ++i) v.set(2 + i, r.get(i));
            rows.push_back(v);
        }
        c = BinaryCode::from_rows(m + 2, rows);
        REQUIRE(c.k() == m / 2 + 1);
    }
    return c;
}

// A compatible order-3 pair on (c, f) = (2, 2): c_pi self-dual of length 4,
// c_phi the x-closure of (e, e) with e = x + x^2.
ModuleCode small_phi() {
    ModuleCode m;
    m.p = 3;
    m.c = 2;
    RingElement e = ring_from_string("011");
    m.rows = {{e, e}};
    return m.module_closure();
}

}  // namespace

TEST_CASE("automorphism spec layout and round trips") {
    AutomorphismSpec s = AutomorphismSpec::standard(3, 2, 2);
    CHECK(s.n() == 8);
    CHECK(s.cycles.size() == 2);
    CHECK(s.fixed == std::vector<int>{6, 7});
    Perm g = s.to_perm();
    CHECK(g.cycle_type() == std::vector<std::pair<int, int>>{{1, 2}, {3, 2}});

    AutomorphismSpec back = AutomorphismSpec::from_perm(g, 3);
    CHECK(back.p == 3);
    CHECK(back.c == 2);
    CHECK(back.f == 2);
    CHECK(back.to_perm() == g);

    AutomorphismSpec parsed = AutomorphismSpec::parse(s.serialize());
    CHECK(parsed.to_perm() == g);
    CHECK(AutomorphismSpec::parse_compact("p=3,c=2,f=2").to_perm() == g);

    // Non-standard layout: cycles need not lead.
    Perm h = Perm::from_cycles("(2,5,7)(3,4,8)", 8);
    AutomorphismSpec odd = AutomorphismSpec::from_perm(h, 3);
    CHECK(odd.c == 2);
    CHECK(odd.f == 2);
    CHECK(odd.fixed == std::vector<int>{0, 5});
    CHECK(odd.to_perm() == h);
}

TEST_CASE("assemble/split round trip on a compatible pair") {
    AutomorphismSpec sigma = AutomorphismSpec::standard(3, 2, 2);
    BinaryCode pi = BinaryCode::from_strings(4, {"1100", "0011"});
    ModuleCode phi = small_phi();

    CompatibilityCheck cc = check_compatibility(pi, phi);
    CHECK(cc.pi_self_dual);
    CHECK(cc.phi_module_closed);
    CHECK(cc.phi_components_even);
    CHECK(cc.phi_dimension);
    CHECK(cc.phi_pairing);
    CHECK(cc.ok());

    BinaryCode c = assemble(pi, phi, sigma);
    CHECK(c.n() == 8);
    CHECK(c.k() == 4);
    CHECK(c.is_self_dual());
    CHECK(sigma.fixes(c));

    SplitResult sr = split(c, sigma);
    CHECK(project_pi(sr.fixed_subcode, sigma) == pi);
    ModuleCode phi2 = map_phi(sr.cycle_subcode, sigma);
    CHECK(phi2.binary_image() == phi.binary_image());

    // Lifts invert the maps.
    CHECK(lift_pi(pi, sigma) == sr.fixed_subcode);
    CHECK(lift_phi(phi2, sigma) == sr.cycle_subcode);
}

TEST_CASE("compatibility flags fail individually") {
    BinaryCode pi = BinaryCode::from_strings(4, {"1100", "0011"});
    ModuleCode phi = small_phi();
    RingElement e = ring_from_string("011");

    SUBCASE("pi not self-dual") {
        BinaryCode bad = BinaryCode::from_strings(4, {"1000", "0011"});
        CompatibilityCheck cc = check_compatibility(bad, phi);
        CHECK_FALSE(cc.pi_self_dual);
    }
    SUBCASE("phi not module-closed") {
        ModuleCode raw;
        raw.p = 3;
        raw.c = 2;
        raw.rows = {{e, e}};
        CompatibilityCheck cc = check_compatibility(pi, raw);
        CHECK_FALSE(cc.phi_module_closed);
    }
    SUBCASE("phi with an odd component") {
        ModuleCode odd;
        odd.p = 3;
        odd.c = 2;
        odd.rows = {{ring_from_string("111"), 0}};
        ModuleCode closed = odd.module_closure();
        CompatibilityCheck cc = check_compatibility(pi, closed);
        CHECK_FALSE(cc.phi_components_even);
    }
    SUBCASE("phi with wrong dimension") {
        // Closure of (e,0),(0,e) has binary dimension 4 > c(p-1)/2 = 2.
        ModuleCode big;
        big.p = 3;
        big.c = 2;
        big.rows = {{e, 0}, {0, e}};
        ModuleCode closed = big.module_closure();
        CompatibilityCheck cc = check_compatibility(pi, closed);
        CHECK(cc.phi_module_closed);
        CHECK_FALSE(cc.phi_dimension);
    }
    SUBCASE("phi failing the pairing") {
        // Closure of (e,0) has the right dimension but form value
        // e * conj(e) = e != 0 on its diagonal pair.
        ModuleCode m;
        m.p = 3;
        m.c = 2;
        m.rows = {{e, 0}};
        ModuleCode closed = m.module_closure();
        CompatibilityCheck cc = check_compatibility(pi, closed);
        CHECK(cc.phi_module_closed);
        CHECK(cc.phi_dimension);
        CHECK_FALSE(cc.phi_pairing);
    }
}

TEST_CASE("every compatible pair assembles self-dual (order 7 instance)") {
    // (c, f) = (2, 2) for p = 7: phi = closure of (e1, e1), pi any self-dual
    // length-4 code; n = 16.
    AutomorphismSpec sigma = AutomorphismSpec::standard(7, 2, 2);
    IdealSystem sys = factor_cyclotomic(7);
    ModuleCode m1;
    m1.p = 7;
    m1.c = 2;
    m1.rows = {{sys.idempotents[0], sys.idempotents[0]}};
    ModuleCode phi = m1.module_closure();
    // Pair with the second-field mate so the binary dimension is c(p-1)/2.
    ModuleCode m2;
    m2.p = 7;
    m2.c = 2;
    m2.rows = {{sys.idempotents[1], sys.idempotents[1]}};
    std::vector<std::vector<RingElement>> all = phi.rows;
    for (const auto& r : m2.module_closure().rows) all.push_back(r);
    ModuleCode joined;
    joined.p = 7;
    joined.c = 2;
    joined.rows = all;
    joined = joined.reduced();

    for (const auto& pi : {BinaryCode::from_strings(4, {"1100", "0011"}),
                           BinaryCode::from_strings(4, {"1010", "0101"}),
                           BinaryCode::from_strings(4, {"1001", "0110"})}) {
        CHECK(check_compatibility(pi, joined).ok());
        BinaryCode c = assemble(pi, joined, sigma);
        CHECK(c.n() == 16);
        CHECK(c.is_self_dual());
        CHECK(sigma.fixes(c));
    }
}

TEST_CASE("block structure identities on random self-dual codes") {
    std::mt19937_64 rng(20260822);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 8 + 2 * (int)(rng() % 13);  // 8..32
        BinaryCode c = random_self_dual(n, rng);
        REQUIRE(c.is_self_dual());
        int cb = 1 + (int)(rng() % (n - 1));
        PiStructure ps = pi_structure(c, cb);
        CHECK(ps.left_dim + ps.right_dim + ps.mixed_rank == c.k());
        CHECK(ps.left_core.k() == ps.left_dim);
        CHECK(ps.right_core.k() == ps.right_dim);
        // Projections are duals of the same-side cores, and carry the mixed rank.
        CHECK(ps.left_span == ps.left_core.dual());
        CHECK(ps.right_span == ps.right_core.dual());
        CHECK(ps.left_span.k() == ps.left_dim + ps.mixed_rank);
        CHECK(ps.right_span.k() == ps.right_dim + ps.mixed_rank);
    }
}

TEST_CASE("fixed block kernel restricts the vanishing subcode") {
    BinaryCode c = BinaryCode::from_strings(6, {"110000", "001100", "000011"});
    BinaryCode d = fixed_block_kernel(c, 2);
    CHECK(d.n() == 4);
    CHECK(d == BinaryCode::from_strings(4, {"1100", "0011"}));
    CHECK(fixed_block_kernel(c, 1).k() == 2);
}

TEST_CASE("self-dual lifts enumerate exactly the codes over a kernel") {
    // d = <110000, 001100> inside F2^6, lifted over a leading block of 2.
    int cb = 2, f = 6;
    BinaryCode d = BinaryCode::from_strings(f, {"110000", "001100"});
    std::vector<BinaryCode> lifts = selfdual_lifts(d, cb);
    CHECK(!lifts.empty());
    std::set<std::string> seen;
    for (const auto& L : lifts) {
        CHECK(L.n() == cb + f);
        CHECK(L.is_self_dual());
        CHECK(fixed_block_kernel(L, cb) == d);
        CHECK(seen.insert(L.to_text()).second);  // pairwise distinct
    }

    // Independent enumeration: all [I_2 | F] completions over d.
    std::set<std::string> brute;
    for (std::uint32_t f1 = 0; f1 < 64; ++f1) {
        for (std::uint32_t f2 = 0; f2 < 64; ++f2) {
            std::vector<BitVector> rows;
            for (const auto& r : d.rows()) {
                BitVector v(cb + f);
                for (int i = 0; i < f; ++i) v.set(cb + i, r.get(i));
                rows.push_back(v);
            }
            for (int j = 0; j < 2; ++j) {
                BitVector v(cb + f);
                v.set(j, true);
                std::uint32_t bits = j == 0 ? f1 : f2;
                for (int i = 0; i < f; ++i) v.set(cb + i, (bits >> i) & 1);
                rows.push_back(v);
            }
            BinaryCode L = BinaryCode::from_rows(cb + f, rows);
            if (L.k() != (cb + f) / 2 || !L.is_self_dual()) continue;
            if (!(fixed_block_kernel(L, cb) == d)) continue;
            brute.insert(L.to_text());
        }
    }
    CHECK(seen == brute);
}

TEST_CASE("lifts reject kernels without orthonormal completions") {
    // dual(<1111>) is the even-weight code: every candidate row has even
    // self-intersection, so no orthonormal completion exists.
    BinaryCode d = BinaryCode::from_strings(4, {"1111"});
    CHECK(selfdual_lifts(d, 2).empty());
}

TEST_CASE("split rejects codes the automorphism does not fix") {
    AutomorphismSpec sigma = AutomorphismSpec::standard(3, 2, 2);
    BinaryCode c = BinaryCode::from_strings(8, {"10000000", "01100000"});
    CHECK_FALSE(sigma.fixes(c));
    CHECK_THROWS(split(c, sigma));
}
