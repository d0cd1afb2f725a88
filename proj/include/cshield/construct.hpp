#pragma once

// Constructions of codes oblivious to coherent noise: the CSS product of
// two classical codes with blocks of single-parity-check Z-stabilizers,
// the general stabilizer lift (M copies per qubit plus optional padding
// qubits), brute-force minimum distance, and the lift distance bounds.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cshield/css.hpp"
#include "cshield/errors.hpp"
#include "cshield/f2la.hpp"
#include "cshield/stabilizer.hpp"

namespace cshield {

namespace detail {

// Kronecker product of a row vector with a fixed block pattern.
inline BinaryVector kron(const BinaryVector& v, const BinaryVector& block) {
    BinaryVector out(v.size() * block.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.bit(i))
            for (std::size_t j = 0; j < block.size(); ++j)
                if (block.bit(j)) out.set(i * block.size() + j, true);
    return out;
}

inline BinaryVector zero_pad(const BinaryVector& v, std::size_t length) {
    BinaryVector out(length);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.bit(i)) out.set(i, true);
    return out;
}

}  // namespace detail

// Alternating block pattern 1010... of weight M/2.
inline BinaryVector default_y_block(std::size_t m_copies) {
    BinaryVector block(m_copies);
    for (std::size_t j = 0; j < m_copies; j += 2) block.set(j, true);
    return block;
}

inline void check_y_blocks(const std::vector<BinaryVector>& y_blocks, std::size_t count, std::size_t m_copies) {
    if (y_blocks.size() != count)
        throw BadYWeight("expected " + std::to_string(count) + " y blocks, got " + std::to_string(y_blocks.size()));
    for (const auto& b : y_blocks) {
        if (b.size() != m_copies) throw BadYWeight("y block length != M");
        if (b.weight() != m_copies / 2)
            throw BadYWeight("y block " + b.to_string() + " has weight " + std::to_string(b.weight()) +
                             ", expected M/2 = " + std::to_string(m_copies / 2));
    }
}

// CSS product: X-stabilizers A2 x 1_M, Z-stabilizers (A1-dual x e_1)
// plus one single-parity-check block per classical coordinate. The signs
// come from y with weight M/2 per block, so the result is oblivious by
// construction. Parameters: [[tM, dim A1 - dim A2, >= min(d(A1) M, d(A2-dual))]].
inline CssCode construct_css_product(const BinaryMatrix& a1, const BinaryMatrix& a2, std::size_t m_copies,
                                     std::vector<BinaryVector> y_blocks = {}) {
    const std::size_t t = a1.col_count();
    if (a2.col_count() != t) throw LengthMismatch("construct_css_product: A1/A2 length mismatch");
    if (m_copies < 2 || m_copies % 2 != 0) throw OddM("M must be even and >= 2");
    const Rref a1_rref = rref(a1);
    for (std::size_t i = 0; i < a2.row_count(); ++i)
        if (!a1_rref.contains(a2.row(i)))
            throw ContainmentViolated("A2 row " + std::to_string(i) + " outside A1");
    if (y_blocks.empty()) y_blocks.assign(t, default_y_block(m_copies));
    check_y_blocks(y_blocks, t, m_copies);

    const std::size_t n = t * m_copies;
    const BinaryVector ones_m = BinaryVector::ones(m_copies);
    const BinaryVector e1 = BinaryVector::unit(m_copies, 0);

    BinaryMatrix c2(n);
    const Rref a2_rref = rref(a2);
    for (std::size_t i = 0; i < a2_rref.mat.row_count(); ++i)
        c2.append_row(detail::kron(a2_rref.mat.row(i), ones_m));

    BinaryMatrix c1perp(n);
    const BinaryMatrix a1_dual = dual_basis(a1);
    for (std::size_t i = 0; i < a1_dual.row_count(); ++i)
        c1perp.append_row(detail::kron(a1_dual.row(i), e1));
    for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t j = 0; j + 1 < m_copies; ++j) {
            BinaryVector row(n);
            row.set(k * m_copies + j, true);
            row.set(k * m_copies + j + 1, true);
            c1perp.append_row(std::move(row));
        }
    }

    BinaryVector y(n);
    for (std::size_t k = 0; k < t; ++k)
        for (std::size_t j = 0; j < m_copies; ++j)
            if (y_blocks[k].bit(j)) y.set(k * m_copies + j, true);

    return make_css_code(n, c2, c1perp, y, BinaryVector(n));
}

// The [[4L^2, 1, 2L]] family: full space by single-parity-check with
// M = 2L copies.
inline CssCode shor_code_family(std::size_t l_param, std::vector<BinaryVector> y_blocks = {}) {
    if (l_param == 0) throw Error("shor_code_family: L must be >= 1");
    const std::size_t t = 2 * l_param;
    BinaryMatrix a2(t);
    for (std::size_t i = 0; i + 1 < t; ++i) {
        BinaryVector row(t);
        row.set(i, true);
        row.set(i + 1, true);
        a2.append_row(std::move(row));
    }
    return construct_css_product(BinaryMatrix::identity(t), a2, t, std::move(y_blocks));
}

// Lift of an arbitrary seed stabilizer code to n*M + padding qubits.
struct ConstructionSpec {
    StabilizerGroup seed;
    std::size_t m_copies = 2;
    std::vector<BinaryVector> y_blocks;  // per seed qubit; default alternating
    std::size_t padding = 0;
};

// Block matrix [A x 1_M | B x e_1 ; 0 | C x e_1 ; 0 | I_n x W]: the seed
// rows keep their signs (the seed is first brought to the normal form
// with the pure-Z block separated and the X-block full rank); the
// single-parity-check rows get signs from the y blocks; padding qubits
// carry weight-1 Z-stabilizers with sign -1.
inline StabilizerGroup construct_stabilizer_lift(const ConstructionSpec& spec) {
    const std::size_t n = spec.seed.n;
    const std::size_t m = spec.m_copies;
    if (m < 2 || m % 2 != 0) throw OddM("M must be even and >= 2");
    std::vector<BinaryVector> y_blocks = spec.y_blocks;
    if (y_blocks.empty()) y_blocks.assign(n, default_y_block(m));
    check_y_blocks(y_blocks, n, m);

    const NormalForm nf = symplectic_normal_form(spec.seed);
    const std::size_t n_out = n * m + spec.padding;
    const BinaryVector ones_m = BinaryVector::ones(m);
    const BinaryVector e1 = BinaryVector::unit(m, 0);

    std::vector<SignedPauli> gens;
    for (const auto& g : nf.mixed_rows)
        gens.emplace_back(detail::zero_pad(detail::kron(g.x, ones_m), n_out),
                          detail::zero_pad(detail::kron(g.z, e1), n_out), g.sign);
    for (const auto& g : nf.pure_z_rows)
        gens.emplace_back(BinaryVector(n_out), detail::zero_pad(detail::kron(g.z, e1), n_out), g.sign);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j + 1 < m; ++j) {
            BinaryVector z(n_out);
            z.set(i * m + j, true);
            z.set(i * m + j + 1, true);
            const int sign = (y_blocks[i].bit(j) ^ y_blocks[i].bit(j + 1)) ? -1 : +1;
            gens.emplace_back(BinaryVector(n_out), std::move(z), sign);
        }
    }
    for (std::size_t p = 0; p < spec.padding; ++p) {
        BinaryVector z(n_out);
        z.set(n * m + p, true);
        gens.emplace_back(BinaryVector(n_out), std::move(z), -1);
    }
    return StabilizerGroup(n_out, std::move(gens));
}

struct DistanceOptions {
    std::optional<std::size_t> cap_weight;
    unsigned threads = 1;
};

// d is the exact distance when exact is true; otherwise the search was
// weight-limited, no witness exists up to the cap, and d is the implied
// lower bound (cap + 1).
struct DistanceResult {
    std::size_t d = 0;
    bool exact = true;
    std::optional<SignedPauli> witness;
};

namespace detail {

struct DistanceContext {
    std::size_t n = 0;
    std::vector<std::array<std::uint64_t, 3>> syndromes;  // per qubit: X, Z, Y
    const Rref* rows = nullptr;

    BinaryVector pack(const std::vector<std::pair<std::size_t, int>>& chosen) const {
        BinaryVector v(2 * n);
        for (auto [q, p] : chosen) {
            if (p == 0 || p == 2) v.set(q, true);
            if (p == 1 || p == 2) v.set(n + q, true);
        }
        return v;
    }
};

// Depth-first enumeration of weight-w Pauli patterns with support in
// [first, n), XOR-accumulating per-qubit syndromes. Zero-syndrome
// patterns outside the group's row space are collected.
inline void distance_dfs(const DistanceContext& ctx, std::size_t first, std::size_t remaining,
                         std::uint64_t syndrome, std::vector<std::pair<std::size_t, int>>& chosen,
                         std::vector<BinaryVector>& hits) {
    if (remaining == 1) {
        for (std::size_t q = first; q < ctx.n; ++q) {
            for (int p = 0; p < 3; ++p) {
                if ((syndrome ^ ctx.syndromes[q][p]) == 0) {
                    chosen.emplace_back(q, p);
                    BinaryVector packed = ctx.pack(chosen);
                    if (!ctx.rows->contains(packed)) hits.push_back(std::move(packed));
                    chosen.pop_back();
                }
            }
        }
        return;
    }
    for (std::size_t q = first; q + remaining <= ctx.n; ++q) {
        for (int p = 0; p < 3; ++p) {
            chosen.emplace_back(q, p);
            distance_dfs(ctx, q + 1, remaining - 1, syndrome ^ ctx.syndromes[q][p], chosen, hits);
            chosen.pop_back();
        }
    }
}

}  // namespace detail

// Exact minimum weight over normalizer-minus-group elements, by
// increasing-weight enumeration with symplectic-commutation filtering and
// a row-space membership test on the rare zero-syndrome hits. The
// pattern space at each weight is partitioned across workers by leading
// support qubit; the reduction keeps the lexicographically smallest
// witness, so results do not depend on the thread count.
inline DistanceResult min_distance(const StabilizerGroup& s, const DistanceOptions& opts = {}) {
    const std::size_t r = s.generators.size();
    if (r > 64) throw CapExceeded("min_distance: more than 64 generators unsupported");
    const BinaryMatrix sym = symplectic_matrix(s);
    const Rref rows = rref(sym);
    // k = n - rank; with no logical qubits there is nothing to search for.
    if (rows.rank() == s.n) throw Error("min_distance: code has no logical qubits");

    detail::DistanceContext ctx;
    ctx.n = s.n;
    ctx.rows = &rows;
    ctx.syndromes.resize(s.n);
    for (std::size_t q = 0; q < s.n; ++q) {
        for (int p = 0; p < 3; ++p) {
            SignedPauli candidate(BinaryVector(s.n), BinaryVector(s.n), +1);
            if (p == 0 || p == 2) candidate.x.set(q, true);
            if (p == 1 || p == 2) candidate.z.set(q, true);
            std::uint64_t word = 0;
            for (std::size_t i = 0; i < r; ++i)
                if (symplectic_inner(candidate, s.generators[i])) word |= std::uint64_t{1} << i;
            ctx.syndromes[q][p] = word;
        }
    }

    const std::size_t max_weight = std::min<std::size_t>(s.n, opts.cap_weight.value_or(s.n));
    const unsigned threads = std::max(1u, opts.threads);
    for (std::size_t w = 1; w <= max_weight; ++w) {
        std::vector<BinaryVector> hits;
        if (threads == 1 || s.n < w + threads) {
            std::vector<std::pair<std::size_t, int>> chosen;
            detail::distance_dfs(ctx, 0, w, 0, chosen, hits);
        } else {
            std::vector<std::vector<BinaryVector>> per_thread(threads);
            std::vector<std::thread> pool;
            for (unsigned tid = 0; tid < threads; ++tid) {
                pool.emplace_back([&, tid] {
                    std::vector<std::pair<std::size_t, int>> chosen;
                    for (std::size_t q0 = tid; q0 + w <= ctx.n; q0 += threads) {
                        for (int p = 0; p < 3; ++p) {
                            chosen.emplace_back(q0, p);
                            if (w == 1) {
                                if (ctx.syndromes[q0][p] == 0) {
                                    BinaryVector packed = ctx.pack(chosen);
                                    if (!ctx.rows->contains(packed)) per_thread[tid].push_back(std::move(packed));
                                }
                            } else {
                                detail::distance_dfs(ctx, q0 + 1, w - 1, ctx.syndromes[q0][p], chosen,
                                                     per_thread[tid]);
                            }
                            chosen.pop_back();
                        }
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& part : per_thread)
                for (auto& h : part) hits.push_back(std::move(h));
        }
        if (!hits.empty()) {
            const BinaryVector* best = &hits.front();
            for (const auto& h : hits)
                if (h < *best) best = &h;
            BinaryVector a(s.n), b(s.n);
            for (std::size_t q = 0; q < s.n; ++q) {
                if (best->bit(q)) a.set(q, true);
                if (best->bit(s.n + q)) b.set(q, true);
            }
            return DistanceResult{w, true, SignedPauli(std::move(a), std::move(b), +1)};
        }
    }
    if (max_weight < s.n) return DistanceResult{max_weight + 1, false, std::nullopt};
    throw Error("min_distance: exhausted all weights without a witness");
}

// d(seed) <= d(lifted) <= M * d(seed), with the lifted search capped at
// the upper bound.
inline bool distance_bounds_check(const StabilizerGroup& seed, const StabilizerGroup& lifted,
                                  std::size_t m_copies, unsigned threads = 1) {
    const DistanceResult ds = min_distance(seed, {std::nullopt, threads});
    DistanceOptions lifted_opts;
    lifted_opts.cap_weight = m_copies * ds.d;
    lifted_opts.threads = threads;
    const DistanceResult dl = min_distance(lifted, lifted_opts);
    if (!dl.exact) return false;  // d(lifted) > M d(seed)
    return ds.d <= dl.d && dl.d <= m_copies * ds.d;
}

}  // namespace cshield
