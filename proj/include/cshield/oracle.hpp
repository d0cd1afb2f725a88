#pragma once

// Dense statevector ground truth at desk scale: code states from the
// general encoding map, the diagonal transversal Z-rotation, code-space
// projection through sequential generator projectors (no dense matrices),
// and invariance reports.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "cshield/css.hpp"
#include "cshield/errors.hpp"
#include "cshield/stabilizer.hpp"

namespace cshield {

inline constexpr std::size_t kOracleMaxQubits = 22;

class StateVector {
  public:
    explicit StateVector(std::size_t qubits) : n_(qubits) {
        if (qubits > kOracleMaxQubits)
            throw CapExceeded("StateVector: " + std::to_string(qubits) + " qubits exceeds cap " +
                              std::to_string(kOracleMaxQubits));
        amp_.assign(std::size_t{1} << qubits, {0.0, 0.0});
    }

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return amp_.size(); }

    std::complex<double>& operator[](std::size_t i) { return amp_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return amp_[i]; }

    double norm() const {
        double acc = 0.0;
        for (const auto& a : amp_) acc += std::norm(a);
        return std::sqrt(acc);
    }

    void scale(double factor) {
        for (auto& a : amp_) a *= factor;
    }

    void normalize() {
        const double nrm = norm();
        if (nrm < 1e-300) throw Error("normalize: zero state");
        scale(1.0 / nrm);
    }

    std::complex<double> inner(const StateVector& other) const {
        if (n_ != other.n_) throw LengthMismatch("inner: qubit count mismatch");
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < amp_.size(); ++i) acc += std::conj(amp_[i]) * other.amp_[i];
        return acc;
    }

  private:
    std::size_t n_;
    std::vector<std::complex<double>> amp_;
};

namespace detail {
inline std::uint64_t state_index(const BinaryVector& v) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.bit(i)) idx |= std::uint64_t{1} << i;
    return idx;
}
}  // namespace detail

// |v-bar> = |C2|^(-1/2) sum_x (-1)^(x.u) |v G + x + y>.
inline StateVector encode(const CssCode& c, const BinaryVector& v,
                          std::uint64_t cap = default_enumeration_cap()) {
    if (v.size() != c.logical_qubits()) throw LengthMismatch("encode: logical vector length != k");
    StateVector psi(c.n);
    BinaryVector shift = c.y;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.bit(i)) shift ^= c.coset_gens.row(i);
    std::size_t count = 0;
    for_each_codeword(
        c.basis_C2,
        [&](const BinaryVector& x) {
            const double sign = x.dot(c.u) ? -1.0 : 1.0;
            psi[detail::state_index(x ^ shift)] += sign;
            ++count;
        },
        cap);
    psi.scale(1.0 / std::sqrt(static_cast<double>(count)));
    return psi;
}

// exp(i theta Z)^(x n): the amplitude at basis state v picks up the phase
// exp(i theta (n - 2 w_H(v))).
inline StateVector apply_transversal_z(const StateVector& psi, double theta) {
    StateVector out = psi;
    const std::size_t n = psi.qubits();
    std::vector<std::complex<double>> phase(n + 1);
    for (std::size_t w = 0; w <= n; ++w) {
        const double arg = theta * (static_cast<double>(n) - 2.0 * static_cast<double>(w));
        phase[w] = {std::cos(arg), std::sin(arg)};
    }
    for (std::size_t i = 0; i < psi.dim(); ++i)
        out[i] *= phase[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(i)))];
    return out;
}

// In-place sign * E(a,b) using the permutation-plus-phase action
// E(a,b)|v> = i^(a.b) (-1)^(b.v) |v + a>.
inline void apply_pauli(StateVector& psi, const SignedPauli& p) {
    if (p.qubits() != psi.qubits()) throw LengthMismatch("apply_pauli: qubit count mismatch");
    const std::uint64_t a = p.x.low_word();
    const std::uint64_t b = p.z.low_word();
    static const std::complex<double> kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::complex<double> c = kPowersOfI[p.x.and_weight(p.z) & 3];
    if (p.sign < 0) c = -c;
    if (a == 0) {
        for (std::size_t v = 0; v < psi.dim(); ++v)
            psi[v] *= (std::popcount(b & v) & 1) ? -c : c;
        return;
    }
    const std::uint64_t high = std::uint64_t{1} << (63 - std::countl_zero(a));
    for (std::size_t v = 0; v < psi.dim(); ++v) {
        if (v & high) continue;
        const std::size_t w = v ^ a;
        const std::complex<double> tv = psi[v];
        const std::complex<double> tw = psi[w];
        psi[v] = c * ((std::popcount(b & w) & 1) ? -tw : tw);
        psi[w] = c * ((std::popcount(b & v) & 1) ? -tv : tv);
    }
}

// Sequential application of (I + sign_i E_i)/2 over all generators.
inline StateVector project_onto_code(const StateVector& psi, const StabilizerGroup& s) {
    StateVector acc = psi;
    for (const auto& g : s.generators) {
        StateVector flipped = acc;
        apply_pauli(flipped, g);
        for (std::size_t i = 0; i < acc.dim(); ++i) acc[i] = 0.5 * (acc[i] + flipped[i]);
    }
    return acc;
}

// Orthonormal states spanning (a subspace of) the code space, obtained by
// projecting seeded random states and Gram-Schmidt orthonormalizing.
// Requests up to `count` states; the code space dimension is the natural
// limit.
inline std::vector<StateVector> code_basis(const StabilizerGroup& s, std::size_t count,
                                           std::uint64_t seed = 20240901) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<StateVector> basis;
    std::size_t attempts = 0;
    while (basis.size() < count && attempts < 8 * count + 16) {
        ++attempts;
        StateVector psi(s.n);
        for (std::size_t i = 0; i < psi.dim(); ++i) psi[i] = {gauss(rng), gauss(rng)};
        psi = project_onto_code(psi, s);
        for (const auto& prev : basis) {
            const std::complex<double> overlap = prev.inner(psi);
            for (std::size_t i = 0; i < psi.dim(); ++i) psi[i] -= overlap * prev[i];
        }
        if (psi.norm() < 1e-6) continue;
        psi.normalize();
        basis.push_back(std::move(psi));
    }
    return basis;
}

struct AngleInvariance {
    double theta = 0.0;
    double min_fidelity = 0.0;           // min over basis states of |<psi|U psi>|
    double max_projector_residual = 0.0; // max over basis states of ||(I-P) U psi||
    bool preserved = false;              // residual <= 1e-9 for every basis state
    bool invariant = false;              // fidelity >= 1 - 1e-10 for every basis state
    std::vector<double> phases;          // per basis state, from the dominant amplitude
    bool shared_phase = false;           // all phases agree (meaningful when invariant)
};

struct InvarianceReport {
    bool all_invariant = false;
    bool all_preserved = false;
    bool error_detecting = false;
    std::size_t basis_states = 0;
    std::vector<AngleInvariance> per_angle;
};

namespace detail {

inline InvarianceReport invariance_from_basis(const std::vector<StateVector>& basis, const StabilizerGroup& s,
                                              const std::vector<double>& thetas) {
    InvarianceReport report;
    report.basis_states = basis.size();
    report.error_detecting = !has_weight1_logical(s);
    report.all_invariant = true;
    report.all_preserved = true;
    for (double theta : thetas) {
        AngleInvariance entry;
        entry.theta = theta;
        entry.min_fidelity = 1.0;
        entry.preserved = true;
        entry.invariant = true;
        std::vector<std::complex<double>> phase_units;
        for (const auto& psi : basis) {
            const StateVector rotated = apply_transversal_z(psi, theta);
            const double fidelity = std::abs(psi.inner(rotated));
            entry.min_fidelity = std::min(entry.min_fidelity, fidelity);
            const StateVector projected = project_onto_code(rotated, s);
            double residual_sq = 0.0;
            for (std::size_t i = 0; i < rotated.dim(); ++i) residual_sq += std::norm(rotated[i] - projected[i]);
            entry.max_projector_residual = std::max(entry.max_projector_residual, std::sqrt(residual_sq));
            // Phase from the dominant amplitude before/after.
            std::size_t arg_max = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < psi.dim(); ++i) {
                if (std::norm(psi[i]) > best) {
                    best = std::norm(psi[i]);
                    arg_max = i;
                }
            }
            const std::complex<double> ratio = rotated[arg_max] / psi[arg_max];
            entry.phases.push_back(std::arg(ratio));
            phase_units.push_back(ratio / std::abs(ratio));
        }
        entry.preserved = entry.max_projector_residual <= 1e-9;
        entry.invariant = entry.min_fidelity >= 1.0 - 1e-10;
        entry.shared_phase = true;
        for (const auto& unit : phase_units)
            if (std::abs(unit - phase_units.front()) > 1e-6) entry.shared_phase = false;
        report.all_invariant = report.all_invariant && entry.invariant;
        report.all_preserved = report.all_preserved && entry.preserved;
        report.per_angle.push_back(std::move(entry));
    }
    return report;
}

}  // namespace detail

// CSS route: the computational basis codewords come from the encoding map.
inline InvarianceReport invariance_up_to_phase(const CssCode& c, const std::vector<double>& thetas,
                                               std::uint64_t cap = default_enumeration_cap()) {
    const std::size_t k = c.logical_qubits();
    if (k > 16) throw CapExceeded("invariance_up_to_phase: 2^k basis states with k > 16");
    std::vector<StateVector> basis;
    for_each_codeword(BinaryMatrix::identity(k), [&](const BinaryVector& v) { basis.push_back(encode(c, v, cap)); },
                      cap);
    return detail::invariance_from_basis(basis, to_stabilizer_group(c), thetas);
}

// Stabilizer route: a seeded orthonormal basis of the code space obtained
// by projection.
inline InvarianceReport invariance_up_to_phase(const StabilizerGroup& s, const std::vector<double>& thetas,
                                               std::uint64_t seed = 20240901) {
    const std::size_t r = rank(symplectic_matrix(s));
    const std::size_t k = s.n - r;
    // each basis state costs a projection sweep on this route
    if (k > 10) throw CapExceeded("invariance_up_to_phase: 2^k projected basis states with k > 10");
    const std::vector<StateVector> basis = code_basis(s, std::size_t{1} << k, seed);
    return detail::invariance_from_basis(basis, s, thetas);
}

// Lightweight preservation test for corpus sweeps: a few random code
// states per angle, verdict = projector residual below threshold at every
// angle. A failing (code, angle) pair is caught with probability one for
// generic probes.
struct PreservationSweep {
    bool preserved_all = true;
    double max_residual = 0.0;
    double worst_theta = 0.0;
};

inline PreservationSweep grid_preservation_check(const StabilizerGroup& s, const std::vector<double>& thetas,
                                                 std::size_t probes = 3, std::uint64_t seed = 20240901,
                                                 double threshold = 1e-9) {
    PreservationSweep sweep;
    const std::vector<StateVector> states = code_basis(s, probes, seed);
    if (states.empty()) throw Error("grid_preservation_check: empty code space sample");
    for (double theta : thetas) {
        for (const auto& psi : states) {
            const StateVector rotated = apply_transversal_z(psi, theta);
            const StateVector projected = project_onto_code(rotated, s);
            double residual_sq = 0.0;
            for (std::size_t i = 0; i < rotated.dim(); ++i) residual_sq += std::norm(rotated[i] - projected[i]);
            const double residual = std::sqrt(residual_sq);
            if (residual > sweep.max_residual) {
                sweep.max_residual = residual;
                sweep.worst_theta = theta;
            }
        }
    }
    sweep.preserved_all = sweep.max_residual <= threshold;
    return sweep;
}

}  // namespace cshield
