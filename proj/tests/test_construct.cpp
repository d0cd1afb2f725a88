#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cshield/construct.hpp"
#include "cshield/oracle.hpp"
#include "helpers/oracles.hpp"
#include "helpers/reference_codes.hpp"

using namespace cshield;

TEST_CASE("construct_css_product", "[construct]") {
    SECTION("the L=2 family member matches the 16-qubit array code") {
        const CssCode css = shor_code_family(2);
        CHECK(css.n == 16);
        CHECK(css.logical_qubits() == 1);
        const StabilizerGroup s = to_stabilizer_group(css);
        CHECK(validate(s).verdict);
        CHECK(obliviousness_check(s).verdict);
        CHECK(min_distance(s).d == 4);
    }
    SECTION("A1 = A2 yields a valid code with zero logicals") {
        const BinaryMatrix a = BinaryMatrix::from_strings({"11"});
        const CssCode css = construct_css_product(a, a, 2);
        CHECK(css.logical_qubits() == 0);
        CHECK(validate(to_stabilizer_group(css)).verdict);
    }
    SECTION("containment and parameter validation") {
        const BinaryMatrix a1 = BinaryMatrix::from_strings({"11"});
        const BinaryMatrix a2 = BinaryMatrix::from_strings({"10"});
        CHECK_THROWS_AS(construct_css_product(a1, a2, 2), ContainmentViolated);
        CHECK_THROWS_AS(construct_css_product(a1, BinaryMatrix(2), 3), OddM);
        CHECK_THROWS_AS(construct_css_product(a1, BinaryMatrix(2), 2,
                                              {BinaryVector::from_string("11"), BinaryVector::from_string("10")}),
                        BadYWeight);
    }
    SECTION("distance dominates min(d(A1) M, d(A2-dual))") {
        auto classical_dmin = [](const BinaryMatrix& code) {
            std::size_t best = code.col_count() + 1;
            for_each_codeword(code, [&](const BinaryVector& v) {
                if (!v.is_zero()) best = std::min(best, v.weight());
            });
            return best;  // cols + 1 when the code is {0}
        };
        std::mt19937_64 rng(113);
        int checked = 0;
        while (checked < 10) {
            const std::size_t t = 2 + rng() % 3;
            BinaryMatrix a1(t);
            for (std::size_t i = 0; i < t; ++i) a1.append_row(testhelpers::random_vector(rng, t));
            const Rref a1r = rref(a1);
            BinaryMatrix a2(t);
            for (std::size_t i = 0; i < a1r.mat.row_count(); ++i)
                if (rng() & 1) a2.append_row(a1r.mat.row(i));
            if (rank(a1) == rank(a2)) continue;  // no logical qubits
            const std::size_t m = (rng() & 1) ? 2 : 4;
            const CssCode css = construct_css_product(a1, a2, m);
            const std::size_t bound =
                std::min(classical_dmin(a1) * m, classical_dmin(dual_basis(a2)));
            CHECK(min_distance(to_stabilizer_group(css)).d >= bound);
            ++checked;
        }
    }
    SECTION("logical count equals dim A1 - dim A2") {
        std::mt19937_64 rng(73);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t t = 2 + rng() % 4;
            BinaryMatrix a1(t);
            for (std::size_t i = 0; i < t; ++i) a1.append_row(testhelpers::random_vector(rng, t));
            BinaryMatrix a2(t);
            const Rref a1r = rref(a1);
            for (std::size_t i = 0; i < a1r.mat.row_count(); ++i)
                if (rng() & 1) a2.append_row(a1r.mat.row(i));
            const CssCode css = construct_css_product(a1, a2, 2);
            CHECK(css.logical_qubits() == rank(a1) - rank(a2));
        }
    }
}

TEST_CASE("shor_code_family parameters", "[construct]") {
    const CssCode l1 = shor_code_family(1);
    CHECK(l1.n == 4);
    CHECK(l1.logical_qubits() == 1);
    CHECK(min_distance(to_stabilizer_group(l1)).d == 2);

    const CssCode l3 = shor_code_family(3);
    CHECK(l3.n == 36);
    CHECK(l3.logical_qubits() == 1);
    CHECK(obliviousness_check(to_stabilizer_group(l3)).verdict);
}

TEST_CASE("construct_stabilizer_lift", "[construct]") {
    SECTION("M=2 lift of the trivial single-qubit code is the dual rail code") {
        ConstructionSpec spec;
        spec.seed = StabilizerGroup(1, {});
        spec.m_copies = 2;
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        REQUIRE(lifted.generators.size() == 1);
        CHECK(lifted.generators[0].x.is_zero());
        CHECK(lifted.generators[0].z == BinaryVector::from_string("11"));
        CHECK(lifted.generators[0].sign == -1);
    }
    SECTION("lift of the 5-qubit seed: signs, validity, obliviousness") {
        ConstructionSpec spec;
        spec.seed = testhelpers::seed513_group();
        spec.m_copies = 2;
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        CHECK(lifted.n == 10);
        CHECK(validate(lifted).verdict);
        CHECK(obliviousness_check(lifted).verdict);
        // per-block pair stabilizers carry negative signs
        const PureZSubgroup zs = pure_z_subgroup(lifted);
        for (std::size_t q = 0; q < 5; ++q) {
            BinaryVector pair(10);
            pair.set(2 * q, true);
            pair.set(2 * q + 1, true);
            CHECK(zs.sign_of(pair) == -1);
        }
    }
    SECTION("explicit per-block y choices from {01, 10} give the same group") {
        ConstructionSpec spec;
        spec.seed = testhelpers::seed513_group();
        spec.m_copies = 2;
        spec.y_blocks = {BinaryVector::from_string("01"), BinaryVector::from_string("10"),
                         BinaryVector::from_string("01"), BinaryVector::from_string("10"),
                         BinaryVector::from_string("01")};
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        CHECK(obliviousness_check(lifted).verdict);
        CHECK(min_distance(lifted).d == 4);
    }
    SECTION("padding qubits get weight-1 Z-stabilizers and stay outside Gamma") {
        ConstructionSpec spec;
        spec.seed = testhelpers::seed513_group();
        spec.m_copies = 2;
        spec.padding = 2;
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        CHECK(lifted.n == 12);
        CHECK(validate(lifted).verdict);
        CHECK(obliviousness_check(lifted).verdict);
        const ComponentDecomposition decomp = component_decomposition(lifted);
        CHECK(decomp.outside == std::vector<std::size_t>{10, 11});
    }
    SECTION("odd M is rejected") {
        ConstructionSpec spec;
        spec.seed = testhelpers::seed513_group();
        spec.m_copies = 3;
        CHECK_THROWS_AS(construct_stabilizer_lift(spec), OddM);
    }
    SECTION("lifting the dual rail itself gives an oblivious 4-qubit code") {
        ConstructionSpec spec;
        spec.seed = to_stabilizer_group(testhelpers::dualrail_css());
        spec.m_copies = 2;
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        CHECK(lifted.n == 4);
        CHECK(validate(lifted).verdict);
        CHECK(obliviousness_check(lifted).verdict);
        // seed distance is 1, so 1 <= d' <= 2
        CHECK(distance_bounds_check(spec.seed, lifted, 2));
    }
}

TEST_CASE("min_distance", "[construct]") {
    SECTION("5-qubit seed code has distance 3") {
        const DistanceResult result = min_distance(testhelpers::seed513_group());
        CHECK(result.d == 3);
        CHECK(result.exact);
        REQUIRE(result.witness.has_value());
        CHECK(result.witness->weight() == 3);
    }
    SECTION("lifted code has distance 4 and the reference witness is valid") {
        ConstructionSpec spec;
        spec.seed = testhelpers::seed513_group();
        spec.m_copies = 2;
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        const DistanceResult result = min_distance(lifted);
        CHECK(result.d == 4);
        const SignedPauli reference(BinaryVector::from_string("1100000000"),
                                    BinaryVector::from_string("0010000010"), +1);
        for (const auto& g : lifted.generators) CHECK(symplectic_inner(reference, g) == 0);
        BinaryVector packed(20);
        for (std::size_t q = 0; q < 10; ++q) {
            if (reference.x.bit(q)) packed.set(q, true);
            if (reference.z.bit(q)) packed.set(10 + q, true);
        }
        CHECK_FALSE(rref(symplectic_matrix(lifted)).contains(packed));
        CHECK(reference.weight() == 4);
    }
    SECTION("array code distance found within a weight-4 cap") {
        const StabilizerGroup s = to_stabilizer_group(testhelpers::shor16_css());
        DistanceOptions opts;
        opts.cap_weight = 4;
        const DistanceResult result = min_distance(s, opts);
        CHECK(result.d == 4);
        CHECK(result.exact);
    }
    SECTION("weight cap below the distance returns a bound") {
        const StabilizerGroup s = to_stabilizer_group(testhelpers::shor16_css());
        DistanceOptions opts;
        opts.cap_weight = 2;
        const DistanceResult result = min_distance(s, opts);
        CHECK_FALSE(result.exact);
        CHECK(result.d == 3);  // no witness up to weight 2, so d >= 3
    }
    SECTION("dual rail has a weight-1 logical") {
        const StabilizerGroup s = to_stabilizer_group(testhelpers::dualrail_css());
        CHECK(min_distance(s).d == 1);
    }
    SECTION("witness is deterministic across thread counts") {
        const StabilizerGroup s = to_stabilizer_group(testhelpers::shor16_css());
        DistanceOptions serial, parallel;
        parallel.threads = 4;
        const DistanceResult a = min_distance(s, serial);
        const DistanceResult b = min_distance(s, parallel);
        CHECK(a.d == b.d);
        REQUIRE(a.witness.has_value());
        REQUIRE(b.witness.has_value());
        CHECK(a.witness->x == b.witness->x);
        CHECK(a.witness->z == b.witness->z);
    }
}

TEST_CASE("distance_bounds_check", "[construct]") {
    SECTION("seed and its M=2 lift: 3 <= 4 <= 6") {
        ConstructionSpec spec;
        spec.seed = testhelpers::seed513_group();
        spec.m_copies = 2;
        CHECK(distance_bounds_check(spec.seed, construct_stabilizer_lift(spec), 2));
    }
    SECTION("random seeds with M in {2,4}") {
        std::mt19937_64 rng(79);
        int checked = 0;
        while (checked < 10) {
            const std::size_t n = 2 + rng() % 4;
            const StabilizerGroup seed = testhelpers::random_stabilizer_group(rng, n, 1 + rng() % n);
            if (seed.generators.empty()) continue;
            if (rank(symplectic_matrix(seed)) == seed.n) continue;  // no logicals
            const std::size_t m = (rng() & 1) ? 2 : 4;
            ConstructionSpec spec;
            spec.seed = seed;
            spec.m_copies = m;
            CHECK(distance_bounds_check(seed, construct_stabilizer_lift(spec), m));
            ++checked;
        }
    }
}

TEST_CASE("every lift passes validation and the structural check", "[construct][property]") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const StabilizerGroup seed = testhelpers::random_stabilizer_group(rng, n, rng() % (n + 1));
        ConstructionSpec spec;
        spec.seed = seed;
        spec.m_copies = (rng() & 1) ? 2 : 4;
        spec.padding = rng() % 3;
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        CHECK(validate(lifted).verdict);
        CHECK(obliviousness_check(lifted).verdict);
    }
}

TEST_CASE("min_distance matches exhaustive symplectic enumeration", "[construct][property]") {
    // Independent oracle: walk all of F_2^(2n), keep the vectors that
    // commute with every generator and sit outside the row space, and
    // take the minimum Pauli weight.
    std::mt19937_64 rng(107);
    int checked = 0;
    while (checked < 15) {
        const std::size_t n = 2 + rng() % 4;  // n <= 5
        const StabilizerGroup s = testhelpers::random_stabilizer_group(rng, n, 1 + rng() % n);
        if (s.generators.empty() || rank(symplectic_matrix(s)) == s.n) continue;
        const Rref rows = rref(symplectic_matrix(s));
        std::size_t best = s.n + 1;
        for (std::uint64_t raw = 1; raw < (std::uint64_t{1} << (2 * s.n)); ++raw) {
            SignedPauli candidate(BinaryVector(s.n), BinaryVector(s.n), +1);
            BinaryVector packed(2 * s.n);
            for (std::size_t j = 0; j < s.n; ++j) {
                if ((raw >> j) & 1) {
                    candidate.x.set(j, true);
                    packed.set(j, true);
                }
                if ((raw >> (s.n + j)) & 1) {
                    candidate.z.set(j, true);
                    packed.set(s.n + j, true);
                }
            }
            bool commutes = true;
            for (const auto& g : s.generators)
                if (symplectic_inner(candidate, g)) commutes = false;
            if (!commutes || rows.contains(packed)) continue;
            best = std::min(best, candidate.weight());
        }
        REQUIRE(best <= s.n);
        CHECK(min_distance(s).d == best);
        ++checked;
    }
}

TEST_CASE("M=2 lift acts as dual-rail concatenation on the state level", "[construct]") {
    // Every computational basis string in the support of a lifted code
    // state reads 01 or 10 inside each block.
    ConstructionSpec spec;
    spec.seed = to_stabilizer_group(testhelpers::code512_css());
    spec.m_copies = 2;
    const StabilizerGroup lifted = construct_stabilizer_lift(spec);
    const std::vector<StateVector> basis = code_basis(lifted, 2);
    REQUIRE(!basis.empty());
    for (const auto& psi : basis) {
        for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
            if (std::abs(psi[idx]) < 1e-9) continue;
            for (std::size_t block = 0; block < 5; ++block) {
                const int b0 = (idx >> (2 * block)) & 1;
                const int b1 = (idx >> (2 * block + 1)) & 1;
                CHECK(b0 + b1 == 1);
            }
        }
    }
}
