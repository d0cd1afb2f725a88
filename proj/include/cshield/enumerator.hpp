#pragma once

// Exact weight enumerators, the MacWilliams transform, signed
// trigonometric sums, divisibility criteria, and the closed forms for
// the single-parity-check code and its odd coset.
//
// Two evaluation routes exist side by side: exact integer arithmetic
// (enumerators, residues) and floating trig sums with compensated
// summation. Checkers that have both routes report both verdicts.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "cshield/errors.hpp"
#include "cshield/f2la.hpp"

namespace cshield {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Angle of level l, exactly as the preservation identities are usually
// written. Gate names (T, sqrt-T) attach to levels differently
// across conventions; the library never assumes one.
inline double level_to_angle(int level) { return 2.0 * kPi / std::ldexp(1.0, level); }

// Coefficients A_0..A_m; A_w = number of codewords of Hamming weight w.
struct WeightEnumerator {
    std::size_t m = 0;
    std::vector<BigInt> coeffs;  // size m + 1

    explicit WeightEnumerator(std::size_t block_length = 0)
        : m(block_length), coeffs(block_length + 1, BigInt(0)) {}

    BigInt total() const {
        BigInt t = 0;
        for (const auto& c : coeffs) t += c;
        return t;
    }

    bool operator==(const WeightEnumerator& other) const { return m == other.m && coeffs == other.coeffs; }
};

inline WeightEnumerator weight_enumerator(const BinaryMatrix& basis,
                                          std::uint64_t cap = default_enumeration_cap()) {
    WeightEnumerator we(basis.col_count());
    for_each_codeword(basis, [&](const BinaryVector& v) { we.coeffs[v.weight()] += 1; }, cap);
    return we;
}

// Split enumerator under a sign character: plus counts codewords with
// eps_v = +1 (always including 0), minus the rest.
struct SignedEnumeratorPair {
    WeightEnumerator plus;
    WeightEnumerator minus;

    std::size_t m() const { return plus.m; }
};

inline SignedEnumeratorPair signed_weight_enumerator(const BinaryMatrix& basis, const BinaryVector& y,
                                                     std::uint64_t cap = default_enumeration_cap()) {
    SignedEnumeratorPair pair{WeightEnumerator(basis.col_count()), WeightEnumerator(basis.col_count())};
    for_each_codeword(
        basis,
        [&](const BinaryVector& v) {
            if (y.dot(v))
                pair.minus.coeffs[v.weight()] += 1;
            else
                pair.plus.coeffs[v.weight()] += 1;
        },
        cap);
    return pair;
}

namespace detail {

inline std::vector<std::vector<BigInt>> pascal_triangle(std::size_t n) {
    std::vector<std::vector<BigInt>> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i].assign(i + 1, BigInt(1));
        for (std::size_t j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double value) {
        const double y = value - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace detail

// Exact dual enumerator via the Krawtchouk expansion
//   B_j = (1/|C|) sum_w A_w K_j(w),  K_j(w) = sum_i (-1)^i C(w,i) C(m-w,j-i).
// dual_size must equal 2^m / |C|.
inline WeightEnumerator macwilliams_transform(const WeightEnumerator& p, const BigInt& dual_size) {
    const std::size_t m = p.m;
    const BigInt size = p.total();
    if (size == 0) throw InconsistentSize("macwilliams_transform: empty enumerator");
    if (size * dual_size != (BigInt(1) << m))
        throw InconsistentSize("macwilliams_transform: dual_size * |C| != 2^m");
    const auto binom = detail::pascal_triangle(m);
    auto choose = [&](std::size_t n, std::size_t k) -> const BigInt& {
        static const BigInt zero(0);
        return k <= n ? binom[n][k] : zero;
    };
    WeightEnumerator dual(m);
    for (std::size_t j = 0; j <= m; ++j) {
        BigInt acc = 0;
        for (std::size_t w = 0; w <= m; ++w) {
            if (p.coeffs[w] == 0) continue;
            BigInt kraw = 0;
            for (std::size_t i = 0; i <= j; ++i) {
                const BigInt term = choose(w, i) * choose(m - w, j - i);
                if (i & 1)
                    kraw -= term;
                else
                    kraw += term;
            }
            acc += p.coeffs[w] * kraw;
        }
        if (acc % size != 0) throw InconsistentSize("macwilliams_transform: non-integral coefficient");
        dual.coeffs[j] = acc / size;
    }
    return dual;
}

namespace detail {
inline void check_pole(double phi) {
    if (std::abs(std::cos(phi)) < 1e-12) throw PoleAtPi2("tan form undefined: |cos phi| < 1e-12");
}
}  // namespace detail

// sum_v eps_v (i tan phi)^(w_H(v)) over the signed enumerator:
// sum_w (plus_w - minus_w) (i tan phi)^w. Compensated summation.
inline std::complex<double> eval_trig(const SignedEnumeratorPair& p, double phi) {
    detail::check_pole(phi);
    const double t = std::tan(phi);
    detail::KahanSum re, im;
    double tpow = 1.0;
    for (std::size_t w = 0; w <= p.m(); ++w) {
        const double diff = static_cast<double>(p.plus.coeffs[w] - p.minus.coeffs[w]);
        if (diff != 0.0) {
            const double term = diff * tpow;
            switch (w & 3) {
                case 0: re.add(term); break;
                case 1: im.add(term); break;
                case 2: re.add(-term); break;
                case 3: im.add(-term); break;
            }
        }
        tpow *= t;
    }
    return {re.sum, im.sum};
}

// The same sum multiplied through by (cos phi)^m, i.e.
// sum_w (plus_w - minus_w) (i sin phi)^w (cos phi)^(m-w). All terms have
// magnitude <= 1, and the value is defined for every phi, including the
// tan pole. The preservation identity in this form reads "== 1".
inline std::complex<double> eval_trig_normalized(const SignedEnumeratorPair& p, double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const std::size_t m = p.m();
    std::vector<double> factor(m + 1);
    double spow = 1.0;
    for (std::size_t w = 0; w <= m; ++w) {
        factor[w] = spow * std::pow(c, static_cast<double>(m - w));
        spow *= s;
    }
    detail::KahanSum re, im;
    for (std::size_t w = 0; w <= m; ++w) {
        const double diff = static_cast<double>(p.plus.coeffs[w] - p.minus.coeffs[w]);
        if (diff == 0.0) continue;
        const double term = diff * factor[w];
        switch (w & 3) {
            case 0: re.add(term); break;
            case 1: im.add(term); break;
            case 2: re.add(-term); break;
            case 3: im.add(-term); break;
        }
    }
    return {re.sum, im.sum};
}

namespace detail {
inline void check_even_rows(const BinaryMatrix& c, const char* what) {
    for (std::size_t i = 0; i < c.row_count(); ++i)
        if (c.row(i).weight() & 1)
            throw OddWeightCodeword(std::string(what) + ": generator row " + std::to_string(i) +
                                    " has odd weight");
}

inline bool divisible(long long value, int l) {
    const long long mod = 1LL << l;
    return value % mod == 0;
}
}  // namespace detail

// 2^l | (m - 2 w_H(w)) for every w in the dual of C. C must have all
// weights even (equivalently: even generator rows).
inline bool divisibility_check(const BinaryMatrix& c, int l, std::uint64_t cap = default_enumeration_cap()) {
    detail::check_even_rows(c, "divisibility_check");
    const long long m = static_cast<long long>(c.col_count());
    bool ok = true;
    for_each_codeword(
        dual_basis(c),
        [&](const BinaryVector& w) {
            if (!detail::divisible(m - 2 * static_cast<long long>(w.weight()), l)) ok = false;
        },
        cap);
    return ok;
}

// Signed variant: with the character eps_v = (-1)^(y.v), trivial
// characters reduce to the unsigned criterion; otherwise the residues are
// tested on B-perp minus C-perp, where B is the kernel of the character
// inside C.
inline bool signed_divisibility_check(const BinaryMatrix& c, const BinaryVector& y, int l,
                                      std::uint64_t cap = default_enumeration_cap()) {
    detail::check_even_rows(c, "signed_divisibility_check");
    if (y.size() != c.col_count()) throw LengthMismatch("signed_divisibility_check: y length != block length");
    std::vector<std::size_t> odd_rows;
    for (std::size_t i = 0; i < c.row_count(); ++i)
        if (c.row(i).dot(y)) odd_rows.push_back(i);
    if (odd_rows.empty()) return divisibility_check(c, l, cap);

    // Basis of B = C  intersect  y-perp: fold the first character-odd row
    // into the other odd rows and drop it.
    const BinaryVector& star = c.row(odd_rows.front());
    BinaryMatrix b(c.col_count());
    for (std::size_t i = 0; i < c.row_count(); ++i) {
        if (i == odd_rows.front()) continue;
        BinaryVector r = c.row(i);
        if (r.dot(y)) r ^= star;
        b.append_row(std::move(r));
    }
    const long long m = static_cast<long long>(c.col_count());
    bool ok = true;
    for_each_codeword(
        dual_basis(b),
        [&](const BinaryVector& w) {
            if (!w.dot(star)) return;  // w in C-perp
            if (!detail::divisible(m - 2 * static_cast<long long>(w.weight()), l)) ok = false;
        },
        cap);
    return ok;
}

// Closed form of the signed sum over the [m, m-1] even-weight code W with
// character weight wy:  sum_{v in W} eps_v (i tan phi)^(w_H(v))
//   = cos(phi (m - 2 wy)) * (sec phi)^m.
inline std::complex<double> even_sum_closed_form(std::size_t m, std::size_t wy, double phi) {
    detail::check_pole(phi);
    if (m % 2 != 0) throw Error("even_sum_closed_form: m must be even");
    const double gamma = phi * (static_cast<double>(m) - 2.0 * static_cast<double>(wy));
    return {std::cos(gamma) * std::pow(1.0 / std::cos(phi), static_cast<double>(m)), 0.0};
}

// Closed form of the signed sum over the odd-weight coset F_2^m \ W:
//   = i sin(phi (m - 2 wy)) * (sec phi)^m.
// Covers the trivial (wy = 0) and all-ones (wy = m) characters as the
// degenerate branches of the same expression.
inline std::complex<double> odd_sum_closed_form(std::size_t m, std::size_t wy, double phi) {
    detail::check_pole(phi);
    if (m % 2 != 0) throw Error("odd_sum_closed_form: m must be even");
    const double gamma = phi * (static_cast<double>(m) - 2.0 * static_cast<double>(wy));
    return {0.0, std::sin(gamma) * std::pow(1.0 / std::cos(phi), static_cast<double>(m))};
}

}  // namespace cshield
