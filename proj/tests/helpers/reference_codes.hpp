#pragma once

// The reference codes used across the test suites: the 4x4 array code
// with one logical qubit, the 16-qubit quantum Reed-Muller code, the
// 5-qubit seed code with its lift, the 5-qubit constant-excitation code
// with a padding qubit, and the dual rail code.

#include <cstddef>
#include <vector>

#include "cshield/css.hpp"
#include "cshield/f2la.hpp"
#include "cshield/stabilizer.hpp"

namespace testhelpers {

using namespace cshield;

// Reed-Muller RM(r,m) generator basis: evaluations of all monomials of
// degree <= r in m variables over F_2^m. Point p has coordinate bits
// p_0..p_{m-1}; variable i evaluates to bit i of the point index.
inline BinaryMatrix rm_generators(std::size_t r, std::size_t m) {
    const std::size_t points = std::size_t{1} << m;
    BinaryMatrix gens(points);
    // monomials grouped by degree, variables in increasing index order
    std::vector<std::vector<std::size_t>> monomials;
    std::vector<std::size_t> current;
    // iterate subsets of variables by popcount
    for (std::size_t deg = 0; deg <= r; ++deg) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            if (static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(mask))) != deg) continue;
            BinaryVector row(points);
            for (std::size_t p = 0; p < points; ++p) {
                bool value = true;
                for (std::size_t i = 0; i < m; ++i)
                    if ((mask >> i) & 1 && !((p >> i) & 1)) value = false;
                row.set(p, value);
            }
            gens.append_row(std::move(row));
        }
    }
    return gens;
}

// [[16,1,4]]: 4x4 qubit array, X-stabilizers are adjacent row pairs,
// Z-stabilizers the even-weight code inside each row, with the sign
// pattern 0110 per row.
inline CssCode shor16_css() {
    const std::size_t n = 16;
    BinaryMatrix c2(n);
    for (std::size_t r = 0; r + 1 < 4; ++r) {
        BinaryVector row(n);
        for (std::size_t c = 0; c < 8; ++c) row.set(4 * r + c, true);
        c2.append_row(std::move(row));
    }
    BinaryMatrix c1perp(n);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c + 1 < 4; ++c) {
            BinaryVector row(n);
            row.set(4 * r + c, true);
            row.set(4 * r + c + 1, true);
            c1perp.append_row(std::move(row));
        }
    }
    BinaryVector y = BinaryVector::from_string("0110011001100110");
    return make_css_code(n, c2, c1perp, y, BinaryVector(n));
}

// [[16,4,2]] quantum Reed-Muller code: C2 = RM(0,4), C1perp = RM(2,4),
// all signs positive.
inline CssCode qrm16_css() {
    BinaryMatrix c2(16);
    c2.append_row(BinaryVector::ones(16));
    return make_css_code(16, c2, rm_generators(2, 4), BinaryVector(16), BinaryVector(16));
}

// The non-CSS [[5,1,3]] seed code.
inline StabilizerGroup seed513_group() {
    std::vector<SignedPauli> gens;
    const char* a_rows[4] = {"10010", "01001", "10100", "01010"};
    const char* b_rows[4] = {"01100", "00110", "00011", "10001"};
    for (int i = 0; i < 4; ++i)
        gens.emplace_back(BinaryVector::from_string(a_rows[i]), BinaryVector::from_string(b_rows[i]), +1);
    return StabilizerGroup(5, std::move(gens));
}

// [[5,1,2]] constant-excitation code: one weight-4 X-stabilizer, two
// weight-2 Z-stabilizers, a weight-1 Z-stabilizer on the padding qubit,
// character vector y = 10101.
inline CssCode code512_css() {
    BinaryMatrix c2(5);
    c2.append_row(BinaryVector::from_string("11110"));
    BinaryMatrix c1perp = BinaryMatrix::from_strings({"11000", "00110", "00001"});
    return make_css_code(5, c2, c1perp, BinaryVector::from_string("10101"), BinaryVector(5));
}

// Dual rail: S = <-Z1 Z2> as a CSS code with empty C2 and y = 01.
inline CssCode dualrail_css() {
    BinaryMatrix c1perp(2);
    c1perp.append_row(BinaryVector::from_string("11"));
    return make_css_code(2, BinaryMatrix(2), c1perp, BinaryVector::from_string("01"), BinaryVector(2));
}

}  // namespace testhelpers
