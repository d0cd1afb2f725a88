#pragma once

// Decision procedures for transversal Z-rotations: the Z-stabilizers
// supported inside an X-component, the per-angle preservation check (one
// trigonometric identity plus vanishing coset sums), the necessary
// transversal-T conditions, the weight-2 Z-stabilizer graph with its
// component decomposition, and the structural check for obliviousness to
// every transversal Z-rotation.
//
// All per-stabilizer checks run on one representative per distinct
// X-component: the conditions depend only on supp(a), so iterating the
// X-component quotient of the group suffices. Reports record which
// representative was used.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cshield/enumerator.hpp"
#include "cshield/errors.hpp"
#include "cshield/f2la.hpp"
#include "cshield/report.hpp"
#include "cshield/stabilizer.hpp"

namespace cshield {

// The pure-Z stabilizers supported inside supp(a), restricted to those
// coordinates, together with the sign character y restricted the same way.
struct SupportedZCode {
    BinaryVector a;          // the X-component, length n
    BinaryMatrix basis_B;    // rows over F_2^(w_H(a))
    BinaryVector y_restricted;

    std::size_t block_length() const { return a.weight(); }

    int sign_of(const BinaryVector& z_restricted) const {
        return y_restricted.dot(z_restricted) ? -1 : +1;
    }
};

namespace detail {

inline SupportedZCode supported_z_code_from(const PureZSubgroup& zs, const BinaryVector& y,
                                            const BinaryVector& a) {
    const std::size_t n = a.size();
    SupportedZCode out;
    out.a = a;
    const std::size_t m = a.weight();
    // Selectors c over the pure-Z basis rows with (c . Z) vanishing
    // outside supp(a).
    BinaryMatrix outside_cols(zs.basis.row_count(), n - m);
    {
        std::size_t col = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a.bit(j)) continue;
            for (std::size_t i = 0; i < zs.basis.row_count(); ++i)
                outside_cols.row(i).set(col, zs.basis.row(i).bit(j));
            ++col;
        }
    }
    const BinaryMatrix selectors = dual_basis(outside_cols.transpose());
    out.basis_B = BinaryMatrix(m);
    for (std::size_t i = 0; i < selectors.row_count(); ++i) {
        BinaryVector z(n);
        for (std::size_t r = 0; r < zs.basis.row_count(); ++r)
            if (selectors.row(i).bit(r)) z ^= zs.basis.row(r);
        BinaryVector zr = z.restrict_to(a);
        if (zr.weight() & 1)
            throw InvariantViolation("supported Z-code contains an odd-weight word " + z.to_string());
        out.basis_B.append_row(std::move(zr));
    }
    out.y_restricted = y.restrict_to(a);
    return out;
}

}  // namespace detail

inline SupportedZCode supported_z_code(const StabilizerGroup& s, const BinaryVector& a) {
    if (a.size() != s.n) throw LengthMismatch("supported_z_code: a has wrong length");
    BinaryMatrix xblock(s.n);
    for (const auto& g : s.generators) xblock.append_row(g.x);
    if (a.is_zero() || !in_row_space(xblock, a))
        throw NotAStabilizerX("no stabilizer has X-component " + a.to_string());
    return detail::supported_z_code_from(pure_z_subgroup(s), character_vector_z(s), a);
}

// The graph on Gamma (qubits covered by some X-component) whose edges are
// weight-2 Z-stabilizers. Components are cliques, and every X-component
// is constant on each component; both facts are asserted.
struct Component {
    std::vector<std::size_t> qubits;  // ascending
    BinaryVector mask;                // length n
    BinaryVector y_restriction;       // length qubits.size()

    std::size_t size() const { return qubits.size(); }
};

struct ComponentDecomposition {
    BinaryVector gamma_mask;            // length n
    std::vector<Component> components;  // ordered by smallest qubit
    std::vector<std::size_t> outside;   // qubits not covered by any X-support
    BinaryVector y;                     // the character vector used for restrictions
};

inline ComponentDecomposition component_decomposition(const StabilizerGroup& s) {
    const PureZSubgroup zs = pure_z_subgroup(s);
    ComponentDecomposition out;
    out.y = character_vector_z(s);
    // Gamma = union of the X-supports of all group elements; the
    // generators' supports suffice.
    out.gamma_mask = BinaryVector(s.n);
    for (const auto& g : s.generators)
        for (std::size_t j = 0; j < s.n; ++j)
            if (g.x.bit(j)) out.gamma_mask.set(j, true);

    std::vector<std::size_t> vertices;
    for (std::size_t j = 0; j < s.n; ++j) {
        if (out.gamma_mask.bit(j))
            vertices.push_back(j);
        else
            out.outside.push_back(j);
    }

    // Union-find over the vertices of Gamma.
    std::vector<std::size_t> parent(s.n);
    for (std::size_t j = 0; j < s.n; ++j) parent[j] = j;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto edge = [&](std::size_t i, std::size_t j) {
        BinaryVector z(s.n);
        z.set(i, true);
        z.set(j, true);
        return zs.contains(z);
    };
    for (std::size_t ii = 0; ii < vertices.size(); ++ii)
        for (std::size_t jj = ii + 1; jj < vertices.size(); ++jj)
            if (edge(vertices[ii], vertices[jj])) parent[find(vertices[ii])] = find(vertices[jj]);

    for (std::size_t v : vertices) {
        const std::size_t root = find(v);
        auto it = std::find_if(out.components.begin(), out.components.end(),
                               [&](const Component& c) { return find(c.qubits.front()) == root; });
        if (it == out.components.end()) {
            Component c;
            c.qubits.push_back(v);
            out.components.push_back(std::move(c));
        } else {
            it->qubits.push_back(v);
        }
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const Component& a, const Component& b) { return a.qubits.front() < b.qubits.front(); });

    for (auto& c : out.components) {
        std::sort(c.qubits.begin(), c.qubits.end());
        c.mask = BinaryVector(s.n);
        for (std::size_t q : c.qubits) c.mask.set(q, true);
        c.y_restriction = out.y.restrict_to(c.mask);
        // Completeness: every intra-component pair must itself be an edge.
        for (std::size_t ii = 0; ii < c.qubits.size(); ++ii)
            for (std::size_t jj = ii + 1; jj < c.qubits.size(); ++jj)
                if (!edge(c.qubits[ii], c.qubits[jj]))
                    throw InvariantViolation("component is not a clique: qubits " + std::to_string(c.qubits[ii]) +
                                         "," + std::to_string(c.qubits[jj]));
        // Every generator's X-part is constant on the component.
        for (const auto& g : s.generators) {
            const std::size_t w = g.x.and_weight(c.mask);
            if (w != 0 && w != c.qubits.size())
                throw InvariantViolation("X-component not constant on a component: " + g.x.to_string());
        }
    }
    return out;
}

// Weight-2 sign census inside one component: with s = w_H(y_k), P counts
// the weight-2 vectors with character +1, Q those with -1. Satisfies
// Q - P = -2 (s - N/2)^2 + N/2.
struct Weight2SignCounts {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
};

inline Weight2SignCounts weight2_sign_counts(std::uint64_t component_size, std::uint64_t wy) {
    if (wy > component_size) throw Error("weight2_sign_counts: wy > N");
    const std::uint64_t s = wy;
    const std::uint64_t r = component_size - wy;
    return {s * (s ? s - 1 : 0) / 2 + r * (r ? r - 1 : 0) / 2, s * r};
}

struct AngleCheckOptions {
    double tolerance = 1e-9;
    std::uint64_t representative_cap = std::uint64_t{1} << 20;
    std::uint64_t enumeration_cap = default_enumeration_cap();
    unsigned threads = 1;  // per-representative checks are independent
};

namespace detail {

inline std::optional<int> dyadic_level(double phi) {
    for (int l = 1; l <= 40; ++l) {
        const double angle = level_to_angle(l);
        if (std::abs(phi - angle) <= 1e-12 * std::max(1.0, std::abs(phi))) return l;
    }
    return std::nullopt;
}

// Representative elements, one per distinct nonzero X-component, sorted by
// the X-component string for report determinism.
inline std::vector<SignedPauli> x_representatives(const StabilizerGroup& s, std::uint64_t cap) {
    std::vector<SignedPauli> reps;
    XComponentStream stream(s, cap);
    SignedPauli e;
    while (stream.next(e))
        if (!e.x.is_zero()) reps.push_back(e);
    std::sort(reps.begin(), reps.end(), [](const SignedPauli& a, const SignedPauli& b) { return a.x < b.x; });
    return reps;
}

}  // namespace detail

// Does the transversal Z-rotation by `phi` preserve the code space?
// For each X-component representative a:
//   identity-sum:  sum over B(a) of eps_v (i sin)^(w) (cos)^(m-w) == 1,
//   coset-zero:    the same sum shifted by any omega outside B(a) == 0,
// checked for one omega per nonzero coset of B(a) (the sum only depends
// on the coset). When phi is 2pi/2^l the identity-sum condition is also
// decided exactly through the divisibility criterion, and any
// disagreement with the numeric route is flagged as an anomaly.
inline CheckReport angle_preservation_check(const StabilizerGroup& s, double phi,
                                            const AngleCheckOptions& opts = {}) {
    CheckReport report;
    report.verdict = true;
    report.notes.push_back("one representative per distinct X-component (conditions depend on supp(a) only)");
    const std::optional<int> level = detail::dyadic_level(phi);
    if (level) report.notes.push_back("angle matches level " + std::to_string(*level));

    const PureZSubgroup zs = pure_z_subgroup(s);
    const BinaryVector y = character_vector_z(s);
    const double sphi = std::sin(phi);
    const double cphi = std::cos(phi);

    struct RepOutcome {
        std::vector<CheckEntry> entries;
        std::vector<std::string> notes;
    };
    const std::vector<SignedPauli> reps = detail::x_representatives(s, opts.representative_cap);
    std::vector<RepOutcome> outcomes(reps.size());

    auto evaluate = [&](const SignedPauli& rep, RepOutcome& outcome) {
        CheckReport local;  // reuse the entry plumbing, then move entries out
        const SupportedZCode code = detail::supported_z_code_from(zs, y, rep.x);
        const std::size_t m = code.block_length();
        const std::string rep_str = rep.x.to_string();

        // Complex factor (i sin)^w (cos)^(m-w) split by the residue of w mod 4.
        std::vector<double> factor(m + 1);
        {
            double spow = 1.0;
            for (std::size_t w = 0; w <= m; ++w) {
                factor[w] = spow * std::pow(cphi, static_cast<double>(m - w));
                spow *= sphi;
            }
        }
        struct Word {
            BinaryVector v;
            std::size_t weight;
            int sign;
        };
        std::vector<Word> words;
        for_each_codeword(
            code.basis_B,
            [&](const BinaryVector& v) { words.push_back({v, v.weight(), code.sign_of(v)}); },
            opts.enumeration_cap);

        auto coset_sum = [&](const BinaryVector& omega, std::size_t omega_weight) {
            detail::KahanSum re, im;
            for (const Word& word : words) {
                const std::size_t w = word.weight + omega_weight - 2 * word.v.and_weight(omega);
                const double term = word.sign * factor[w];
                switch (w & 3) {
                    case 0: re.add(term); break;
                    case 1: im.add(term); break;
                    case 2: re.add(-term); break;
                    case 3: im.add(-term); break;
                }
            }
            return std::complex<double>(re.sum, im.sum);
        };

        // Condition: identity sum equals 1.
        const std::complex<double> identity = coset_sum(BinaryVector(m), 0);
        const double identity_residual = std::abs(identity - std::complex<double>(1.0, 0.0));
        {
            auto& e = local.add("identity-sum", rep_str, identity_residual <= opts.tolerance);
            e.residual = identity_residual;
            if (level) {
                try {
                    const bool exact = signed_divisibility_check(code.basis_B, code.y_restricted,
                                                                 *level, opts.enumeration_cap);
                    e.exact = exact;
                    if (exact != e.pass) {
                        auto& anomaly = local.add("identity-sum-anomaly", rep_str, false);
                        anomaly.witness = "numeric and divisibility verdicts disagree";
                    }
                } catch (const CapExceeded&) {
                    outcome.notes.push_back("exact route skipped for " + rep_str + " (cap)");
                }
            }
            // e may have been invalidated by the anomaly push; re-find it
            auto& entry = local.entries[0];
            if (!entry.pass) {
                entry.witness = "sum " + std::to_string(identity.real()) +
                                (identity.imag() < 0 ? "" : "+") + std::to_string(identity.imag()) + "i != 1";
            }
        }

        // Condition: every coset sum outside B(a) vanishes. One omega per
        // nonzero coset; the zero coset is the identity-sum case above.
        double worst = 0.0;
        std::optional<BinaryVector> worst_omega;
        CosetStream cosets(code.basis_B, m, opts.enumeration_cap);
        BinaryVector omega;
        bool first = true;
        while (cosets.next(omega)) {
            if (first) {  // zero coset
                first = false;
                continue;
            }
            const double residual = std::abs(coset_sum(omega, omega.weight()));
            if (residual > worst) {
                worst = residual;
                worst_omega = omega;
            }
        }
        {
            auto& e = local.add("coset-zero", rep_str, worst <= opts.tolerance);
            e.residual = worst;
            if (!e.pass)
                e.witness = "coset of omega=" + worst_omega->to_string() + " has |sum| " + std::to_string(worst);
        }
        outcome.entries = std::move(local.entries);
    };

    if (opts.threads <= 1 || reps.size() < 2) {
        for (std::size_t i = 0; i < reps.size(); ++i) evaluate(reps[i], outcomes[i]);
    } else {
        const unsigned workers = std::min<unsigned>(opts.threads, static_cast<unsigned>(reps.size()));
        std::vector<std::thread> pool;
        for (unsigned tid = 0; tid < workers; ++tid)
            pool.emplace_back([&, tid] {
                for (std::size_t i = tid; i < reps.size(); i += workers) evaluate(reps[i], outcomes[i]);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& outcome : outcomes) {
        for (auto& entry : outcome.entries) {
            if (!entry.pass) report.verdict = false;
            report.entries.push_back(std::move(entry));
        }
        for (auto& note : outcome.notes) report.notes.push_back(std::move(note));
    }
    return report;
}

// Necessary conditions for preservation under the transversal T gate:
// even X-weights, B(a) contains a self-dual code (equivalently its dual
// is contained in it), and the signs on that dual follow i^(w_H(z)).
inline CheckReport transversal_t_conditions(const StabilizerGroup& s,
                                            const AngleCheckOptions& opts = {}) {
    CheckReport report;
    report.verdict = true;
    const PureZSubgroup zs = pure_z_subgroup(s);
    const BinaryVector y = character_vector_z(s);

    for (const auto& rep : detail::x_representatives(s, opts.representative_cap)) {
        const std::string rep_str = rep.x.to_string();
        const std::size_t m = rep.x.weight();
        {
            auto& e = report.add("even-weight", rep_str, m % 2 == 0);
            if (!e.pass) {
                e.witness = "w_H(a) = " + std::to_string(m);
                report.verdict = false;
            }
        }
        const SupportedZCode code = detail::supported_z_code_from(zs, y, rep.x);
        const BinaryMatrix bperp = dual_basis(code.basis_B);
        const Rref b_rref = rref(code.basis_B);
        bool contained = true;
        for (std::size_t i = 0; i < bperp.row_count(); ++i)
            if (!b_rref.contains(bperp.row(i))) contained = false;
        {
            auto& e = report.add("dual-contained", rep_str, contained);
            if (!contained) {
                e.witness = "dual of B(a) not inside B(a); no self-dual subcode";
                report.verdict = false;
            }
        }
        if (!contained) continue;
        bool signs_ok = true;
        std::string witness;
        for_each_codeword(
            bperp,
            [&](const BinaryVector& z) {
                const std::size_t w = z.weight();
                const int required = (w % 4 == 0) ? +1 : (w % 4 == 2) ? -1 : 0;
                const int actual = code.sign_of(z);
                if (required == 0 || actual != required) {
                    if (signs_ok) witness = "z=" + z.to_string() + " has sign " + std::to_string(actual);
                    signs_ok = false;
                }
            },
            opts.enumeration_cap);
        auto& e = report.add("dual-signs", rep_str, signs_ok);
        if (!signs_ok) {
            e.witness = witness;
            report.verdict = false;
        }
    }
    return report;
}

// Structural check for obliviousness to every transversal Z-rotation:
// for each X-component representative a,
//   component-coverage: supp(a) is a disjoint union of whole components,
//   component-balance:  each such component has even size N_k and
//                       w_H(y_k) = N_k / 2.
inline CheckReport obliviousness_check(const StabilizerGroup& s, const AngleCheckOptions& opts = {}) {
    CheckReport report;
    report.verdict = true;
    report.notes.push_back("one representative per distinct X-component (conditions depend on supp(a) only)");
    const ComponentDecomposition decomp = component_decomposition(s);

    for (const auto& rep : detail::x_representatives(s, opts.representative_cap)) {
        const std::string rep_str = rep.x.to_string();
        bool coverage = true;
        bool balance = true;
        std::string coverage_witness, balance_witness;
        std::size_t covered = 0;
        for (const auto& comp : decomp.components) {
            const std::size_t overlap = rep.x.and_weight(comp.mask);
            if (overlap == 0) continue;
            if (overlap != comp.size()) {
                coverage = false;
                coverage_witness = "component starting at qubit " + std::to_string(comp.qubits.front()) +
                                   " only partially inside supp(a)";
                continue;
            }
            covered += comp.size();
            const std::size_t wy = comp.y_restriction.weight();
            if (comp.size() % 2 != 0 || wy != comp.size() / 2) {
                balance = false;
                balance_witness = "component {" + comp.mask.to_string() + "}: N_k=" + std::to_string(comp.size()) +
                                  ", w_H(y_k)=" + std::to_string(wy);
            }
        }
        if (covered != rep.x.weight()) {
            coverage = false;
            if (coverage_witness.empty()) coverage_witness = "supp(a) not covered by components";
        }
        auto& e1 = report.add("component-coverage", rep_str, coverage);
        if (!coverage) {
            e1.witness = coverage_witness;
            report.verdict = false;
        }
        auto& e2 = report.add("component-balance", rep_str, balance);
        if (!balance) {
            e2.witness = balance_witness;
            report.verdict = false;
        }
    }
    return report;
}

}  // namespace cshield
