#pragma once

// CSS codes with sign characters: conversion to a signed stabilizer
// group, codeword weight profiles under the general encoding map, the
// constant-excitation decision, and the cross-check against the
// structural obliviousness verdict.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cshield/errors.hpp"
#include "cshield/f2la.hpp"
#include "cshield/oblivious.hpp"
#include "cshield/stabilizer.hpp"

namespace cshield {

// CSS(X, C2; Z, C1perp) with C2 inside C1 and sign characters y (pure-Z
// signs) and u (pure-X signs). coset_gens generates coset representatives
// of C2 in C1; its row count is the number of logical qubits.
struct CssCode {
    std::size_t n = 0;
    BinaryMatrix basis_C2;
    BinaryMatrix basis_C1perp;
    BinaryVector y;
    BinaryVector u;
    BinaryMatrix coset_gens;

    std::size_t logical_qubits() const { return coset_gens.row_count(); }
};

// Validates orthogonality, reduces both bases to independent rows, and
// extends the X-stabilizer code to C1 with the deterministic pivot rule
// to obtain coset representatives.
inline CssCode make_css_code(std::size_t n, const BinaryMatrix& c2, const BinaryMatrix& c1perp,
                             const BinaryVector& y, const BinaryVector& u) {
    if (c2.col_count() != n && c2.row_count() > 0) throw InvalidCss("C2 block length != n");
    if (c1perp.col_count() != n && c1perp.row_count() > 0) throw InvalidCss("C1perp block length != n");
    if (y.size() != n || u.size() != n) throw InvalidCss("character vector length != n");
    for (std::size_t i = 0; i < c2.row_count(); ++i)
        for (std::size_t j = 0; j < c1perp.row_count(); ++j)
            if (c2.row(i).dot(c1perp.row(j)))
                throw InvalidCss("C2 row " + std::to_string(i) + " not orthogonal to C1perp row " +
                                 std::to_string(j));

    CssCode code;
    code.n = n;
    code.basis_C2 = rref(c2.row_count() ? c2 : BinaryMatrix(n)).mat;
    code.basis_C1perp = rref(c1perp.row_count() ? c1perp : BinaryMatrix(n)).mat;
    code.y = y;
    code.u = u;

    const BinaryMatrix c1 = dual_basis(code.basis_C1perp);
    code.coset_gens = BinaryMatrix(n);
    BinaryMatrix span = code.basis_C2;
    std::size_t current = rank(span);
    for (std::size_t i = 0; i < c1.row_count(); ++i) {
        span.append_row(c1.row(i));
        const std::size_t r = rank(span);
        if (r > current) {
            code.coset_gens.append_row(c1.row(i));
            current = r;
        } else {
            // dependent modulo the span so far; drop it again
            BinaryMatrix trimmed(n);
            for (std::size_t k = 0; k + 1 < span.row_count(); ++k) trimmed.append_row(span.row(k));
            span = std::move(trimmed);
        }
    }
    return code;
}

// Generators: rows of C2 as X-type with sign (-1)^(row.u), rows of C1perp
// as Z-type with sign (-1)^(row.y).
inline StabilizerGroup to_stabilizer_group(const CssCode& c) {
    std::vector<SignedPauli> gens;
    for (std::size_t i = 0; i < c.basis_C2.row_count(); ++i) {
        const BinaryVector& row = c.basis_C2.row(i);
        gens.emplace_back(row, BinaryVector(c.n), row.dot(c.u) ? -1 : +1);
    }
    for (std::size_t i = 0; i < c.basis_C1perp.row_count(); ++i) {
        const BinaryVector& row = c.basis_C1perp.row(i);
        gens.emplace_back(BinaryVector(c.n), row, row.dot(c.y) ? -1 : +1);
    }
    StabilizerGroup s(c.n, std::move(gens));
    const CheckReport check = validate(s);
    if (!check.verdict) {
        const CheckEntry* fail = check.first_failure();
        throw InvalidCss("stabilizer validation failed: " + (fail ? fail->witness : std::string("unknown")));
    }
    return s;
}

// Multiset of weights { w_H(v G + x + y) : x in C2 } for one logical v.
struct CodewordProfile {
    BinaryVector logical_v;
    std::vector<std::size_t> weights;  // sorted, one entry per x in C2
};

inline CodewordProfile codeword_profile(const CssCode& c, const BinaryVector& v,
                                        std::uint64_t cap = default_enumeration_cap()) {
    if (v.size() != c.logical_qubits()) throw LengthMismatch("codeword_profile: logical vector length != k");
    BinaryVector shift = c.y;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.bit(i)) shift ^= c.coset_gens.row(i);
    CodewordProfile profile;
    profile.logical_v = v;
    for_each_codeword(
        c.basis_C2, [&](const BinaryVector& x) { profile.weights.push_back((x ^ shift).weight()); }, cap);
    std::sort(profile.weights.begin(), profile.weights.end());
    return profile;
}

// Constant-excitation decision: every logical coset must have a single
// weight. For error-detecting codes the constants also agree across
// cosets; the report carries both facts.
struct ConstantExcitationReport {
    bool is_constant_excitation = false;
    bool weights_equal_across_cosets = false;
    // logical v (as string) -> the constant weight, or nullopt if the
    // coset mixes weights.
    std::map<std::string, std::optional<std::size_t>> per_coset_weight;
};

inline ConstantExcitationReport constant_excitation_check(const CssCode& c,
                                                          std::uint64_t cap = default_enumeration_cap()) {
    const std::size_t k = c.logical_qubits();
    if (k >= 63) throw CapExceeded("constant_excitation_check: 2^k cosets with k >= 63");
    detail::check_cap(std::uint64_t{1} << k, cap, "constant_excitation_check");
    ConstantExcitationReport report;
    report.is_constant_excitation = true;
    report.weights_equal_across_cosets = true;
    std::optional<std::size_t> shared;
    for_each_codeword(BinaryMatrix::identity(k),
                      [&](const BinaryVector& v) {
                          const CodewordProfile profile = codeword_profile(c, v, cap);
                          const bool constant = profile.weights.front() == profile.weights.back();
                          if (constant) {
                              report.per_coset_weight[v.to_string()] = profile.weights.front();
                              if (!shared) shared = profile.weights.front();
                              if (*shared != profile.weights.front()) report.weights_equal_across_cosets = false;
                          } else {
                              report.per_coset_weight[v.to_string()] = std::nullopt;
                              report.is_constant_excitation = false;
                              report.weights_equal_across_cosets = false;
                          }
                      },
                      cap);
    return report;
}

// Is there a weight-1 element of the normalizer outside the group? Used
// to decide whether a code is error-detecting (d > 1) without a full
// distance search.
inline bool has_weight1_logical(const StabilizerGroup& s) {
    const Rref rows = rref(symplectic_matrix(s));
    for (std::size_t q = 0; q < s.n; ++q) {
        for (int pauli = 0; pauli < 3; ++pauli) {
            SignedPauli candidate(BinaryVector(s.n), BinaryVector(s.n), +1);
            if (pauli == 0 || pauli == 1) candidate.x.set(q, true);
            if (pauli == 1 || pauli == 2) candidate.z.set(q, true);
            bool commutes = true;
            for (const auto& g : s.generators)
                if (symplectic_inner(candidate, g)) commutes = false;
            if (!commutes) continue;
            BinaryVector packed(2 * s.n);
            if (candidate.x.bit(q)) packed.set(q, true);
            if (candidate.z.bit(q)) packed.set(s.n + q, true);
            if (!rows.contains(packed)) return true;
        }
    }
    return false;
}

// Cross-check of the structural obliviousness verdict against the
// constant-excitation verdict. The two must agree on every CSS code;
// disagreement is reported, never silently resolved. Error-detecting
// codes must additionally share one excitation constant.
struct ObliviousnessCrossCheck {
    bool structural_pass = false;
    bool is_constant_excitation = false;
    bool agree = false;
    bool error_detecting = false;
    std::optional<bool> shared_constant_ok;  // set for error-detecting CE codes
    CheckReport structural_report;
    ConstantExcitationReport excitation_report;
};

inline ObliviousnessCrossCheck cross_check_obliviousness(const CssCode& c,
                                                         std::uint64_t cap = default_enumeration_cap()) {
    ObliviousnessCrossCheck out;
    const StabilizerGroup s = to_stabilizer_group(c);
    out.structural_report = obliviousness_check(s);
    out.excitation_report = constant_excitation_check(c, cap);
    out.structural_pass = out.structural_report.verdict;
    out.is_constant_excitation = out.excitation_report.is_constant_excitation;
    out.agree = out.structural_pass == out.is_constant_excitation;
    out.error_detecting = !has_weight1_logical(s);
    if (out.is_constant_excitation && out.error_detecting)
        out.shared_constant_ok = out.excitation_report.weights_equal_across_cosets;
    return out;
}

}  // namespace cshield
