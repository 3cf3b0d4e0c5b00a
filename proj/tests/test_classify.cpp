#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "sdcode/catalog.hpp"
#include "sdcode/classify.hpp"
#include "sdcode/cyclotomic.hpp"
#include "sdcode/perm.hpp"

using namespace sdcode;

namespace {

WeightDistribution extremal44(int family, int beta) {
    WeightDistribution wd;
    wd.n = 44;
    wd.counts.assign(45, 0);
    wd.counts[0] = 1;
    wd.counts[8] = 44 + 4 * beta;
    wd.counts[10] = (family == 1 ? 976 : 1232) - 8 * beta;
    return wd;
}

// Random x-closed module inside the first field component (the domain of
// transform_between).
ModuleCode random_module(int p, int c, int rows, std::mt19937& rng) {
    IdealSystem sys = factor_cyclotomic(p);
    ModuleCode m;
    m.p = p;
    m.c = c;
    std::uniform_int_distribution<int> bits(0, (1 << p) - 1);
    for (int r = 0; r < rows; ++r) {
        std::vector<RingElement> row(c);
        for (int i = 0; i < c; ++i) row[i] = ring_mul(RingElement(bits(rng)), sys.idempotents[0], p);
        m.rows.push_back(std::move(row));
    }
    return m.module_closure().reduced();
}

std::uint64_t group_order(const std::vector<Perm>& gens, int degree) {
    return PermGroup::generated_by(gens, degree).order();
}

bool same_group(const std::vector<Perm>& a, const std::vector<Perm>& b, int degree) {
    PermGroup ga = PermGroup::generated_by(a, degree);
    PermGroup gb = PermGroup::generated_by(b, degree);
    if (ga.order() != gb.order()) return false;
    for (const auto& g : a) {
        if (!gb.contains(g)) return false;
    }
    for (const auto& g : b) {
        if (!ga.contains(g)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("beta profiles decode the two extremal families") {
    for (int beta : {0, 10, 38, 122}) {
        auto p1 = beta_profile(extremal44(1, beta));
        REQUIRE(p1);
        CHECK(p1->family == 1);
        CHECK(p1->beta == beta);
        CHECK(p1->label() == "W1");
        auto p2 = beta_profile(extremal44(2, beta));
        REQUIRE(p2);
        CHECK(p2->family == 2);
        CHECK(p2->beta == beta);
        CHECK(p2->label() == "W2");
    }

    SUBCASE("wrong length") {
        WeightDistribution wd = extremal44(1, 10);
        wd.n = 42;
        wd.counts.resize(43);
        CHECK_FALSE(beta_profile(wd));
    }
    SUBCASE("a codeword below weight eight") {
        WeightDistribution wd = extremal44(1, 10);
        wd.counts[4] = 2;
        CHECK_FALSE(beta_profile(wd));
    }
    SUBCASE("weight-eight count off the lattice") {
        WeightDistribution wd = extremal44(1, 10);
        wd.counts[8] += 1;
        CHECK_FALSE(beta_profile(wd));
    }
    SUBCASE("weight-ten count matching neither family") {
        WeightDistribution wd = extremal44(1, 10);
        wd.counts[10] += 8;
        CHECK_FALSE(beta_profile(wd));
    }
}

TEST_CASE("cycle transformations compose to module equivalences") {
    std::mt19937 rng(20260822);
    std::uniform_int_distribution<int> shift(0, 6), frob(0, 2);
    for (int trial = 0; trial < 20; ++trial) {
        ModuleCode a = random_module(7, 4, 2, rng);
        CycleTransform t;
        std::vector<int> img(4);
        for (int i = 0; i < 4; ++i) img[i] = i;
        std::shuffle(img.begin(), img.end(), rng);
        t.rho = Perm::from_images(img);
        t.shifts = {shift(rng), shift(rng), shift(rng), shift(rng)};
        t.frobenius = frob(rng);
        ModuleCode b = apply_transform(a, t);
        CHECK(b.is_module_closed());
        CHECK(b.binary_image().k() == a.binary_image().k());

        // The found witness need not equal t; it must map a onto b.
        auto back = transform_between(a, b);
        REQUIRE(back);
        CHECK(apply_transform(a, *back).to_text() == b.to_text());

        auto self = transform_between(a, a);
        REQUIRE(self);
        CHECK(apply_transform(a, *self).to_text() == a.to_text());
    }
}

TEST_CASE("order-7 component representatives are complete and inequivalent") {
    std::vector<ModuleCode> d1 = component_reps(6, 1);
    std::vector<ModuleCode> d2 = component_reps(6, 2);
    std::vector<ModuleCode> d3 = component_reps(6, 3);
    CHECK(d1.size() == 1);
    CHECK(d2.size() == 10);
    CHECK(d3.size() == 25);
    for (const auto& reps : {d1, d2, d3}) {
        int dim = (int)reps.size() == 1 ? 1 : (int)reps.size() == 10 ? 2 : 3;
        for (const auto& m : reps) {
            CHECK(m.p == 7);
            CHECK(m.c == 6);
            CHECK(m.is_module_closed());
            CHECK(m.binary_image().k() == 3 * dim);
        }
        for (std::size_t i = 0; i < reps.size(); ++i) {
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                CHECK_FALSE(transform_between(reps[i], reps[j]));
        }
    }
}

TEST_CASE("annihilator components complete a Hermitian self-dual module") {
    IdealSystem sys = factor_cyclotomic(7);
    for (int dim = 1; dim <= 3; ++dim) {
        for (const auto& m1 : component_reps(6, dim)) {
            ModuleCode m2 = annihilator_component(m1);
            CHECK(m2.binary_image().k() == 3 * (6 - dim));
            ModuleCode joined = join_components(m1, m2);
            // Both field components together must form an x-closed module of
            // binary dimension c * (p - 1) / 2 with vanishing pairing.
            CHECK(joined.binary_image().k() == 18);
            HermitianCheck hc = hermitian_selfdual_check(joined, sys);
            CHECK(hc.pairing_ok);
            CHECK(hc.dimension_ok);
        }
    }
}

TEST_CASE("projected stabilizer of the colored R24 automorphisms") {
    BinaryCode r24 = Catalog::open_default().load_binary("Gpi_R24");
    REQUIRE(r24.n() == 24);
    std::vector<int> coloring(24, 0);
    for (int i = 10; i < 24; ++i) coloring[i] = 1;
    std::vector<Perm> projected;
    for (const auto& g : automorphism_group(r24, coloring).gens) {
        std::vector<int> img(10);
        for (int i = 0; i < 10; ++i) img[i] = g[i];
        projected.push_back(Perm::from_images(img));
    }
    // Frozen oracle: independently recorded generators of the stabilizer on
    // the ten cycle coordinates.
    std::vector<Perm> expected;
    for (const char* c : {"(7,8)(9,10)", "(7,9,10)", "(7,9)(8,10)", "(7,10)", "(5,6)", "(4,6,5)",
                          "(2,3)", "(1,3,2)", "(1,4)(2,5)(3,6)"})
        expected.push_back(Perm::from_cycles(c, 10));
    CHECK(same_group(projected, expected, 10));
    CHECK(group_order(projected, 10) == 1728);
}

TEST_CASE("module stabilizers on ten cycles match recorded generator sets") {
    Catalog cat = Catalog::open_default();

    SUBCASE("E10: full equality") {
        ModuleCode e10 = cat.load_module("Esigma_E10");
        std::vector<Perm> computed = transform_stabilizer_gens(e10);
        std::vector<Perm> expected;
        for (const char* c : {"(1,3,5,7,9)(2,4,6,8,10)", "(1,2)(3,4)", "(1,3)(2,4)", "(9,10)"})
            expected.push_back(Perm::from_cycles(c, 10));
        CHECK(same_group(computed, expected, 10));
    }
    SUBCASE("B10: recorded subgroup is contained") {
        ModuleCode b10 = cat.load_module("Esigma_B10");
        PermGroup computed = PermGroup::generated_by(transform_stabilizer_gens(b10), 10);
        for (const char* c : {"(3,4)(8,9)", "(1,2)(3,4)", "(1,3)(2,4)", "(6,7)(8,9)", "(6,8)(7,9)",
                              "(1,6)(2,7)(3,8)(4,9)(5,10)"})
            CHECK(computed.contains(Perm::from_cycles(c, 10)));
    }
}

TEST_CASE("expected-count tables round trip and flag mismatches") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "sdcode_expect_test.txt";
    {
        std::ofstream out(path);
        out << "# comment line\nW1 10 2\nW2 0 1  # trailing\nTOTAL 3\n";
    }
    ExpectTable table = read_expect(path.string());
    REQUIRE(table.lines.size() == 2);
    CHECK(table.lines[0].family == "W1");
    CHECK(table.lines[0].beta == 10);
    CHECK(table.lines[0].count == 2);
    CHECK(table.total == 3);

    ClassificationReport rep;
    auto push = [&](int family, int beta) {
        ClassifiedCode cc;
        cc.profile.family = family;
        cc.profile.beta = beta;
        rep.codes.push_back(cc);
    };
    push(1, 10);
    push(1, 10);
    push(2, 0);
    rep.finalize();
    CHECK(check_expect(rep, table) == "");

    SUBCASE("count off by one") {
        rep.codes.pop_back();
        rep.finalize();
        CHECK(check_expect(rep, table) != "");
    }
    SUBCASE("unexpected profile") {
        push(2, 7);
        rep.finalize();
        CHECK(check_expect(rep, table) != "");
    }
    SUBCASE("total mismatch") {
        table.total = 4;
        CHECK(check_expect(rep, table) != "");
    }
    fs::remove(path);
}
