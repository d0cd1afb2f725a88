#pragma once

// Signed Pauli operators in the E(a,b) convention, stabilizer groups,
// exact sign tracking through multiplication, validity checking, and the
// pure-Z subgroup with its sign character.
//
// A Hermitian Pauli is eps * E(a,b) with E(a,b) = i^(a.b mod 4) D(a,b),
// D(a,b) = X^a1 Z^b1 x ... x X^an Z^bn. Internally products are tracked
// as i^kappa D(a,b) with kappa mod 4; a real residual phase is required
// whenever we convert back, since every element of a valid stabilizer
// group is Hermitian with sign +-1.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cshield/errors.hpp"
#include "cshield/f2la.hpp"
#include "cshield/report.hpp"

namespace cshield {

struct SignedPauli {
    BinaryVector x;  // X-component a
    BinaryVector z;  // Z-component b
    int sign = +1;   // +1 or -1

    SignedPauli() = default;
    SignedPauli(BinaryVector a, BinaryVector b, int s) : x(std::move(a)), z(std::move(b)), sign(s) {
        if (x.size() != z.size()) throw LengthMismatch("SignedPauli: X and Z components differ in length");
        if (sign != 1 && sign != -1) throw Error("SignedPauli: sign must be +1 or -1");
    }

    std::size_t qubits() const { return x.size(); }

    // Number of qubits acted on non-trivially (as X, Y or Z).
    std::size_t weight() const {
        std::size_t w = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x.bit(i) || z.bit(i)) ++w;
        return w;
    }

    bool operator==(const SignedPauli& other) const {
        return sign == other.sign && x == other.x && z == other.z;
    }

    std::string to_string() const {
        return std::string(sign > 0 ? "+" : "-") + " X:" + x.to_string() + " Z:" + z.to_string();
    }
};

// <[a,b],[c,d]>_S = a.d + b.c (mod 2); zero iff the operators commute.
inline int symplectic_inner(const SignedPauli& p, const SignedPauli& q) {
    if (p.qubits() != q.qubits()) throw LengthMismatch("symplectic_inner: qubit count mismatch");
    return (p.x.dot(q.z) ^ p.z.dot(q.x)) ? 1 : 0;
}

namespace detail {

// kappa of eps*E(a,b) seen as i^kappa D(a,b).
inline unsigned pauli_kappa(const SignedPauli& p) {
    return (p.x.and_weight(p.z) + (p.sign < 0 ? 2u : 0u)) & 3u;
}

inline SignedPauli pauli_from_kappa(unsigned kappa, BinaryVector a, BinaryVector b) {
    const unsigned residual = (kappa - a.and_weight(b)) & 3u;
    if (residual == 0) return SignedPauli(std::move(a), std::move(b), +1);
    if (residual == 2) return SignedPauli(std::move(a), std::move(b), -1);
    throw NonRealPhase("product phase i^" + std::to_string(residual) + " is not real");
}

}  // namespace detail

// Exact product of two Hermitian Paulis. D(a,b)D(c,d) = (-1)^(b.c) D(a+c, b+d),
// so the accumulated phase stays a power of i; a commuting Hermitian pair
// always yields a real sign, anything else raises NonRealPhase.
inline SignedPauli multiply(const SignedPauli& p, const SignedPauli& q) {
    if (p.qubits() != q.qubits()) throw LengthMismatch("multiply: qubit count mismatch");
    const unsigned kappa =
        (detail::pauli_kappa(p) + detail::pauli_kappa(q) + 2u * (p.z.and_weight(q.x) & 1u)) & 3u;
    return detail::pauli_from_kappa(kappa, p.x ^ q.x, p.z ^ q.z);
}

struct StabilizerGroup {
    std::size_t n = 0;
    std::vector<SignedPauli> generators;

    StabilizerGroup() = default;
    StabilizerGroup(std::size_t qubits, std::vector<SignedPauli> gens)
        : n(qubits), generators(std::move(gens)) {
        for (const auto& g : generators)
            if (g.qubits() != n) throw LengthMismatch("StabilizerGroup: generator length != n");
    }

    std::size_t dimension() const { return generators.size(); }
};

// A group element together with the generator subset that produced it.
struct GroupElement {
    SignedPauli pauli;
    std::vector<std::size_t> selector;  // generator indices, ascending
};

inline GroupElement element_from_selector(const StabilizerGroup& s, const std::vector<std::size_t>& selector) {
    SignedPauli acc(BinaryVector(s.n), BinaryVector(s.n), +1);
    for (std::size_t idx : selector) acc = multiply(acc, s.generators.at(idx));
    return GroupElement{std::move(acc), selector};
}

// [A|B] generator matrix of the group (row i = generator i).
inline BinaryMatrix symplectic_matrix(const StabilizerGroup& s) {
    BinaryMatrix m(s.generators.size(), 2 * s.n);
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
        for (std::size_t j = 0; j < s.n; ++j) {
            m.row(i).set(j, s.generators[i].x.bit(j));
            m.row(i).set(s.n + j, s.generators[i].z.bit(j));
        }
    }
    return m;
}

// Commutativity of every generator pair plus independence of the rows of
// [A|B]. Failures are report entries with the offending pair or rank.
inline CheckReport validate(const StabilizerGroup& s) {
    CheckReport report;
    report.verdict = true;
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
        for (std::size_t j = i + 1; j < s.generators.size(); ++j) {
            if (symplectic_inner(s.generators[i], s.generators[j]) != 0) {
                auto& e = report.add("commutativity", "", false);
                e.witness = "generators " + std::to_string(i) + " and " + std::to_string(j) + " anticommute";
                report.verdict = false;
            }
        }
    }
    if (report.verdict) report.add("commutativity", "", true);
    const std::size_t r = rank(symplectic_matrix(s));
    const bool independent = r == s.generators.size();
    auto& e = report.add("independence", "", independent);
    if (!independent) {
        e.witness = "rank " + std::to_string(r) + " < " + std::to_string(s.generators.size()) + " generators";
        report.verdict = false;
    }
    return report;
}

// Generators brought to the block form [A'|B' ; 0|C]: mixed rows whose
// X-parts are in reduced echelon form (full row rank), then pure-Z rows
// with echelonized Z-parts. Row operations multiply the actual group
// elements, so signs are carried exactly.
struct NormalForm {
    std::vector<SignedPauli> mixed_rows;
    std::vector<SignedPauli> pure_z_rows;
};

inline NormalForm symplectic_normal_form(const StabilizerGroup& s) {
    std::vector<SignedPauli> work = s.generators;
    const std::size_t n = s.n;
    std::size_t next = 0;
    try {
        for (std::size_t col = 0; col < n && next < work.size(); ++col) {
            std::size_t pivot = next;
            while (pivot < work.size() && !work[pivot].x.bit(col)) ++pivot;
            if (pivot == work.size()) continue;
            std::swap(work[next], work[pivot]);
            for (std::size_t r = 0; r < work.size(); ++r)
                if (r != next && work[r].x.bit(col)) work[r] = multiply(work[r], work[next]);
            ++next;
        }
        NormalForm nf;
        nf.mixed_rows.assign(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(next));
        std::vector<SignedPauli> zpart(work.begin() + static_cast<std::ptrdiff_t>(next), work.end());
        // Echelonize the pure-Z block on its Z columns.
        std::size_t znext = 0;
        for (std::size_t col = 0; col < n && znext < zpart.size(); ++col) {
            std::size_t pivot = znext;
            while (pivot < zpart.size() && !zpart[pivot].z.bit(col)) ++pivot;
            if (pivot == zpart.size()) continue;
            std::swap(zpart[znext], zpart[pivot]);
            for (std::size_t r = 0; r < zpart.size(); ++r)
                if (r != znext && zpart[r].z.bit(col)) zpart[r] = multiply(zpart[r], zpart[znext]);
            ++znext;
        }
        for (auto& g : zpart) {
            if (!g.x.is_zero() || g.z.is_zero())
                throw NormalFormFailure("dependent or non-pure-Z residual row " + g.to_string());
        }
        nf.pure_z_rows = std::move(zpart);
        return nf;
    } catch (const NonRealPhase& e) {
        throw NormalFormFailure(std::string("sign bookkeeping failed: ") + e.what());
    }
}

// Basis of {z : eps_z E(0,z) in S} with the sign of each basis row. The
// signs form a character of the space: sign(z1 + z2) = sign(z1) sign(z2).
struct PureZSubgroup {
    BinaryMatrix basis;       // rows span the pure-Z space
    std::vector<int> signs;   // sign of E(0, basis row i) in the group

    int sign_of(const BinaryVector& z) const {
        // Decompose z over the echelonized basis and multiply row signs.
        BinaryVector v = z;
        int s = +1;
        for (std::size_t i = 0; i < basis.row_count(); ++i) {
            const std::size_t lead = basis.row(i).leading_bit();
            if (lead < v.size() && v.bit(lead)) {
                v ^= basis.row(i);
                s *= signs[i];
            }
        }
        if (!v.is_zero()) throw Error("sign_of: vector not in the pure-Z space");
        return s;
    }

    bool contains(const BinaryVector& z) const {
        BinaryVector v = z;
        for (std::size_t i = 0; i < basis.row_count(); ++i) {
            const std::size_t lead = basis.row(i).leading_bit();
            if (lead < v.size() && v.bit(lead)) v ^= basis.row(i);
        }
        return v.is_zero();
    }
};

inline PureZSubgroup pure_z_subgroup(const StabilizerGroup& s) {
    const NormalForm nf = symplectic_normal_form(s);
    PureZSubgroup out;
    out.basis = BinaryMatrix(s.n);
    for (const auto& g : nf.pure_z_rows) {
        out.basis.append_row(g.z);
        out.signs.push_back(g.sign);
    }
    return out;
}

// Some y with sign(z) = (-1)^(y.z) for every pure-Z stabilizer z. Unique
// only modulo the dual of the pure-Z space; the fixed pivot rule makes the
// returned solution deterministic (free variables zero).
inline BinaryVector character_vector_z(const StabilizerGroup& s) {
    const PureZSubgroup zs = pure_z_subgroup(s);
    std::vector<bool> rhs(zs.basis.row_count());
    for (std::size_t i = 0; i < zs.signs.size(); ++i) rhs[i] = zs.signs[i] < 0;
    auto y = solve_transposed(zs.basis, rhs);
    if (!y) throw Error("character_vector_z: signs do not form a character (invalid group)");
    return *y;
}

// Two candidate character vectors are equivalent iff their difference is
// orthogonal to the whole pure-Z space.
inline bool character_vectors_equivalent(const StabilizerGroup& s, const BinaryVector& y1, const BinaryVector& y2) {
    const PureZSubgroup zs = pure_z_subgroup(s);
    const BinaryVector d = y1 ^ y2;
    for (std::size_t i = 0; i < zs.basis.row_count(); ++i)
        if (zs.basis.row(i).dot(d)) return false;
    return true;
}

// One concrete group element per distinct X-component, streamed in
// Gray-code order over the normal form's mixed rows. The b that comes
// with each a depends on the (deterministic) elimination, and is recorded
// in reports by the callers.
class XComponentStream {
  public:
    explicit XComponentStream(const StabilizerGroup& s, std::uint64_t cap = std::uint64_t{1} << 20)
        : current_(BinaryVector(s.n), BinaryVector(s.n), +1) {
        const NormalForm nf = symplectic_normal_form(s);
        rows_ = nf.mixed_rows;
        if (rows_.size() >= 63) throw CapExceeded("X-component enumeration: rank >= 63 unsupported");
        total_ = std::uint64_t{1} << rows_.size();
        detail::check_cap(total_, cap, "X-component enumeration");
    }

    std::uint64_t count() const { return total_; }

    bool next(SignedPauli& out) {
        if (index_ == total_) return false;
        if (index_ > 0)
            current_ = multiply(current_, rows_[static_cast<std::size_t>(std::countr_zero(index_))]);
        out = current_;
        ++index_;
        return true;
    }

  private:
    std::vector<SignedPauli> rows_;
    SignedPauli current_;
    std::uint64_t total_ = 0;
    std::uint64_t index_ = 0;
};

}  // namespace cshield
