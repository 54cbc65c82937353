#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "pendulum/errors.hpp"
#include "pendulum/spectrum.hpp"

namespace pendulum {

enum class sector : std::uint8_t { zero, plus, minus };

inline sector opposite(sector s) {
    if (s == sector::plus) return sector::minus;
    if (s == sector::minus) return sector::plus;
    throw domain_error("opposite: zero sector has no opposite");
}

class lattice;

/// Index of a Bohr-Sommerfeld basis vector: sigma^0_n, sigma^+_m or
/// sigma^-_m. Only a lattice can mint one, so out-of-bounds indices are
/// unrepresentable.
class basis_index {
public:
    sector sec() const noexcept { return sec_; }
    int k() const noexcept { return k_; } // n for the zero sector, m otherwise

    friend bool operator==(const basis_index& a, const basis_index& b) {
        return a.sec_ == b.sec_ && a.k_ == b.k_;
    }

    std::string str() const {
        switch (sec_) {
            case sector::zero: return "sigma0_" + std::to_string(k_);
            case sector::plus: return "sigma+_" + std::to_string(k_);
            case sector::minus: return "sigma-_" + std::to_string(k_);
        }
        return "?";
    }

private:
    friend class lattice;
    basis_index(sector s, int k) : sec_(s), k_(k) {}
    sector sec_;
    int k_;
};

/// The truncated Bohr-Sommerfeld lattice carrier:
/// {sigma0_0..sigma0_N} u {sigma±_M..sigma±_m_max}, with level energies.
class lattice {
public:
    explicit lattice(const spectrum& sp)
        : N_(sp.N), M_(sp.M), m_max_(sp.m_max), hbar_(sp.hbar) {
        zero_energy_.resize(N_ + 1);
        rot_energy_.resize(m_max_ - M_ + 1);
        for (const auto& l : sp.levels) {
            if (l.region == energy_region::oscillation)
                zero_energy_[l.n] = l.energy;
            else if (l.region == energy_region::rotation_plus)
                rot_energy_[l.n - M_] = l.energy;
        }
    }

    int N() const noexcept { return N_; }
    int M() const noexcept { return M_; }
    int m_max() const noexcept { return m_max_; }
    double hbar() const noexcept { return hbar_; }
    int size() const noexcept { return N_ + 1 + 2 * (m_max_ - M_ + 1); }

    basis_index zero(int n) const {
        if (n < 0 || n > N_) throw domain_error("lattice: sigma0 index out of range");
        return basis_index(sector::zero, n);
    }
    basis_index plus(int m) const {
        if (m < M_ || m > m_max_) throw domain_error("lattice: sigma+ index out of range");
        return basis_index(sector::plus, m);
    }
    basis_index minus(int m) const {
        if (m < M_ || m > m_max_) throw domain_error("lattice: sigma- index out of range");
        return basis_index(sector::minus, m);
    }
    basis_index make(sector s, int k) const {
        switch (s) {
            case sector::zero: return zero(k);
            case sector::plus: return plus(k);
            case sector::minus: return minus(k);
        }
        throw domain_error("lattice: bad sector");
    }

    int flat(const basis_index& i) const noexcept {
        switch (i.sec()) {
            case sector::zero: return i.k();
            case sector::plus: return N_ + 1 + (i.k() - M_);
            default: return N_ + 1 + (m_max_ - M_ + 1) + (i.k() - M_);
        }
    }
    basis_index from_flat(int f) const {
        const int nz = N_ + 1, nr = m_max_ - M_ + 1;
        if (f < 0 || f >= size()) throw domain_error("lattice: flat index out of range");
        if (f < nz) return basis_index(sector::zero, f);
        if (f < nz + nr) return basis_index(sector::plus, M_ + (f - nz));
        return basis_index(sector::minus, M_ + (f - nz - nr));
    }

    double energy(const basis_index& i) const {
        return i.sec() == sector::zero ? zero_energy_[i.k()] : rot_energy_[i.k() - M_];
    }

private:
    int N_, M_, m_max_;
    double hbar_;
    std::vector<double> zero_energy_;
    std::vector<double> rot_energy_;
};

using complexd = std::complex<double>;

/// A state expanded in the (orthonormal) Bohr-Sommerfeld basis.
class quantum_state {
public:
    quantum_state() = default;

    void set(int flat, complexd c) {
        if (c == complexd(0.0, 0.0))
            coeff_.erase(flat);
        else
            coeff_[flat] = c;
    }
    complexd at(int flat) const {
        const auto it = coeff_.find(flat);
        return it == coeff_.end() ? complexd(0.0, 0.0) : it->second;
    }
    const std::map<int, complexd>& coefficients() const noexcept { return coeff_; }
    bool empty() const noexcept { return coeff_.empty(); }

    /// Hermitian inner product <a|b>, conjugate-linear in the first slot.
    friend complexd inner(const quantum_state& a, const quantum_state& b) {
        complexd s(0.0, 0.0);
        for (const auto& [idx, ca] : a.coeff_) s += std::conj(ca) * b.at(idx);
        return s;
    }

private:
    std::map<int, complexd> coeff_;
};

/// Sparse linear operator on the truncated lattice, stored by columns.
class linear_operator {
public:
    explicit linear_operator(int dim) : dim_(dim), cols_(static_cast<std::size_t>(dim)) {}

    int dim() const noexcept { return dim_; }
    bool truncated() const noexcept { return truncated_; }
    void mark_truncated() noexcept { truncated_ = true; }

    void add(int row, int col, complexd v) {
        auto& c = cols_[static_cast<std::size_t>(col)];
        const complexd w = c[row] + v;
        if (w == complexd(0.0, 0.0))
            c.erase(row);
        else
            c[row] = w;
    }

    const std::map<int, complexd>& column(int col) const {
        return cols_[static_cast<std::size_t>(col)];
    }

    quantum_state apply(const quantum_state& psi) const {
        quantum_state out;
        std::map<int, complexd> acc;
        for (const auto& [col, c] : psi.coefficients())
            for (const auto& [row, v] : cols_[static_cast<std::size_t>(col)]) acc[row] += c * v;
        for (const auto& [row, v] : acc) out.set(row, v);
        return out;
    }

    friend linear_operator compose(const linear_operator& a, const linear_operator& b) {
        linear_operator out(a.dim_);
        out.truncated_ = a.truncated_ || b.truncated_;
        for (int col = 0; col < b.dim_; ++col)
            for (const auto& [mid, vb] : b.column(col))
                for (const auto& [row, va] : a.column(mid)) out.add(row, col, va * vb);
        return out;
    }

    friend linear_operator operator-(const linear_operator& a, const linear_operator& b) {
        linear_operator out = a;
        out.truncated_ = a.truncated_ || b.truncated_;
        for (int col = 0; col < b.dim_; ++col)
            for (const auto& [row, v] : b.column(col)) out.add(row, col, -v);
        return out;
    }

    friend linear_operator operator*(complexd s, const linear_operator& a) {
        linear_operator out(a.dim_);
        out.truncated_ = a.truncated_;
        for (int col = 0; col < a.dim_; ++col)
            for (const auto& [row, v] : a.column(col)) out.add(row, col, s * v);
        return out;
    }

    double max_abs_entry() const {
        double m = 0.0;
        for (const auto& c : cols_)
            for (const auto& [row, v] : c) m = std::max(m, std::abs(v));
        return m;
    }

    friend double max_abs_diff(const linear_operator& a, const linear_operator& b) {
        return (a - b).max_abs_entry();
    }

    /// Sparse triplets (row, col, re, im) sorted by (col, row).
    std::vector<std::array<double, 4>> triplets() const {
        std::vector<std::array<double, 4>> out;
        for (int col = 0; col < dim_; ++col)
            for (const auto& [row, v] : column(col))
                out.push_back({static_cast<double>(row), static_cast<double>(col),
                               v.real(), v.imag()});
        return out;
    }

private:
    int dim_;
    std::vector<std::map<int, complexd>> cols_;
    bool truncated_ = false;
};

/// Conjugate transpose with respect to the orthonormal BS basis.
inline linear_operator adjoint(const linear_operator& a) {
    linear_operator out(a.dim());
    if (a.truncated()) out.mark_truncated();
    for (int col = 0; col < a.dim(); ++col)
        for (const auto& [row, v] : a.column(col)) out.add(col, row, std::conj(v));
    return out;
}

inline linear_operator commutator(const linear_operator& a, const linear_operator& b) {
    return compose(a, b) - compose(b, a);
}

/// Diagonal quantization: Q_f sigma_C = values(C) sigma_C. Every lattice
/// index must be present in the value map.
inline linear_operator diagonal_operator(const lattice& lat, const std::map<int, complexd>& values) {
    linear_operator out(lat.size());
    for (int f = 0; f < lat.size(); ++f) {
        const auto it = values.find(f);
        if (it == values.end())
            throw domain_error("diagonal_operator: missing eigenvalue for index " +
                               lat.from_flat(f).str());
        if (it->second != complexd(0.0, 0.0)) out.add(f, f, it->second);
    }
    return out;
}

/// The smoothed envelopes r, rho± and their products R± = rho± r, sampled at
/// the lattice's level energies. r vanishes only at e = 0; rho± indicate the
/// P0 u P± support.
struct smoothing_envelope {
    std::map<double, double> r_at_level; // level energy -> r(e)
    double epsilon = 0.0;

    double r(double energy) const {
        const auto it = r_at_level.find(energy);
        if (it == r_at_level.end())
            throw domain_error("smoothing_envelope: r sampled off the level set");
        return it->second;
    }

    static double rho(sector side, sector state_sector) {
        if (side == sector::zero) throw domain_error("rho: side must be plus or minus");
        return state_sector == opposite(side) ? 0.0 : 1.0;
    }

    double R(sector side, sector state_sector, double energy) const {
        return rho(side, state_sector) * r(energy);
    }
};

inline smoothing_envelope make_envelope(const spectrum& sp) {
    smoothing_envelope env;
    env.epsilon = sp.epsilon_gap;
    for (const auto& l : sp.levels) env.r_at_level[l.energy] = l.energy == 0.0 ? 0.0 : 1.0;
    return env;
}

/// Eigenvalues of the globalized action A_side: n hbar on sigma0_n,
/// 2m hbar on sigma^side_m, 0 on the opposite sector.
struct extended_action {
    sector side;
    double hbar;

    double quanta(const basis_index& i) const {
        if (i.sec() == sector::zero) return static_cast<double>(i.k());
        return i.sec() == side ? static_cast<double>(2 * i.k()) : 0.0;
    }
    double eigenvalue(const basis_index& i) const { return quanta(i) * hbar; }

    linear_operator as_operator(const lattice& lat) const {
        std::map<int, complexd> vals;
        for (int f = 0; f < lat.size(); ++f)
            vals[f] = complexd(eigenvalue(lat.from_flat(f)), 0.0);
        return diagonal_operator(lat, vals);
    }
    /// Same operator with eigenvalues in units of hbar; entries are exact
    /// small integers, so commutator identities can be checked bit-exactly.
    linear_operator as_quanta_operator(const lattice& lat) const {
        std::map<int, complexd> vals;
        for (int f = 0; f < lat.size(); ++f)
            vals[f] = complexd(quanta(lat.from_flat(f)), 0.0);
        return diagonal_operator(lat, vals);
    }
};

/// Lowering operator Q_{R_side e^{-i Theta_side}}:
///   sigma0_n -> sigma0_{n-1} (n >= 1),  sigma0_0 -> 0,
///   sigma^side_m -> sigma^side_{m-1} (m > M),  sigma^side_M -> sigma0_N,
///   sigma^{-side}_m -> 0.
inline linear_operator lowering(sector side, const lattice& lat, const smoothing_envelope& env) {
    if (side == sector::zero) throw domain_error("lowering: side must be plus or minus");
    linear_operator op(lat.size());
    for (int n = 1; n <= lat.N(); ++n) {
        const double c = env.r(lat.energy(lat.zero(n)));
        if (c != 0.0) op.add(lat.flat(lat.zero(n - 1)), lat.flat(lat.zero(n)), c);
    }
    // sigma0_0 column: r(e_0) = 0, no entry
    for (int m = lat.M() + 1; m <= lat.m_max(); ++m) {
        const basis_index col = lat.make(side, m);
        op.add(lat.flat(lat.make(side, m - 1)), lat.flat(col), env.r(lat.energy(col)));
    }
    op.add(lat.flat(lat.zero(lat.N())), lat.flat(lat.make(side, lat.M())),
           env.r(lat.energy(lat.make(side, lat.M()))));
    return op;
}

/// Raising operator Q_{R_side e^{+i Theta_side}}, the adjoint of lowering:
///   sigma0_n -> sigma0_{n+1} (n < N),  sigma0_N -> sigma^side_M,
///   sigma^side_m -> sigma^side_{m+1},  sigma^{-side}_m -> 0.
/// Raising past m_max truncates to 0 and marks the operator truncated.
inline linear_operator raising(sector side, const lattice& lat, const smoothing_envelope& env) {
    if (side == sector::zero) throw domain_error("raising: side must be plus or minus");
    linear_operator op(lat.size());
    for (int n = 0; n < lat.N(); ++n)
        op.add(lat.flat(lat.zero(n + 1)), lat.flat(lat.zero(n)),
               env.r(lat.energy(lat.zero(n + 1))));
    op.add(lat.flat(lat.make(side, lat.M())), lat.flat(lat.zero(lat.N())),
           env.r(lat.energy(lat.make(side, lat.M()))));
    for (int m = lat.M(); m < lat.m_max(); ++m)
        op.add(lat.flat(lat.make(side, m + 1)), lat.flat(lat.make(side, m)),
               env.r(lat.energy(lat.make(side, m + 1))));
    op.mark_truncated(); // sigma^side_{m_max} image dropped
    return op;
}

/// Q_zeta: vanishes on the zero sector, swaps sigma+_m <-> sigma-_m.
inline linear_operator swap_operator(const lattice& lat) {
    linear_operator op(lat.size());
    for (int m = lat.M(); m <= lat.m_max(); ++m) {
        op.add(lat.flat(lat.minus(m)), lat.flat(lat.plus(m)), 1.0);
        op.add(lat.flat(lat.plus(m)), lat.flat(lat.minus(m)), 1.0);
    }
    return op;
}

/// Generators of the shifting algebra, for transitivity words.
enum class generator : std::uint8_t { lower_plus, lower_minus, raise_plus, raise_minus, swap_pm };

inline const char* generator_name(generator g) {
    switch (g) {
        case generator::lower_plus: return "a+";
        case generator::lower_minus: return "a-";
        case generator::raise_plus: return "b+";
        case generator::raise_minus: return "b-";
        case generator::swap_pm: return "Q_zeta";
    }
    return "?";
}

/// A word over {a+, a-, b+, b-, Q_zeta} (applied left to right) mapping
/// sigma_i to a nonzero multiple of sigma_j within the truncated lattice.
inline std::vector<generator> transitivity_witness(const basis_index& i, const basis_index& j,
                                                   const lattice& lat,
                                                   const smoothing_envelope& env) {
    const linear_operator gens[5] = {
        lowering(sector::plus, lat, env), lowering(sector::minus, lat, env),
        raising(sector::plus, lat, env), raising(sector::minus, lat, env), swap_operator(lat)};

    const int start = lat.flat(i), goal = lat.flat(j);
    std::vector<int> prev(static_cast<std::size_t>(lat.size()), -1);
    std::vector<generator> via(static_cast<std::size_t>(lat.size()), generator::swap_pm);
    std::vector<char> seen(static_cast<std::size_t>(lat.size()), 0);
    std::deque<int> queue;
    queue.push_back(start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        if (cur == goal) {
            std::vector<generator> word;
            for (int at = goal; at != start; at = prev[static_cast<std::size_t>(at)])
                word.push_back(via[static_cast<std::size_t>(at)]);
            return {word.rbegin(), word.rend()};
        }
        for (int g = 0; g < 5; ++g) {
            const auto& col = gens[g].column(cur);
            if (col.size() != 1) continue; // 0 image or (never here) non-basis image
            const int next = col.begin()->first;
            if (seen[static_cast<std::size_t>(next)]) continue;
            seen[static_cast<std::size_t>(next)] = 1;
            prev[static_cast<std::size_t>(next)] = cur;
            via[static_cast<std::size_t>(next)] = static_cast<generator>(g);
            queue.push_back(next);
        }
    }
    throw search_exhausted_error("transitivity_witness: " + i.str() + " cannot reach " + j.str() +
                                 " within the truncated lattice");
}

} // namespace pendulum
