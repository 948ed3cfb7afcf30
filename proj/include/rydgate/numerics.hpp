// numerics.hpp: small dense complex linear algebra and fixed-step integrators
// Header-only. Everything here is sized for the 8-dimensional cavity⊗atom space
// but works for any small dimension.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rydgate {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Raised when a fixed-step run drifts off the physical manifold (norm / trace).
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------ CVector

class CVector {
public:
    explicit CVector(std::size_t dim) : data_(dim, Complex{}) {
        if (dim == 0) throw std::invalid_argument("CVector: dimension must be positive");
    }
    CVector(std::initializer_list<Complex> entries) : data_(entries) {
        if (data_.empty()) throw std::invalid_argument("CVector: dimension must be positive");
    }

    static CVector basis(std::size_t dim, std::size_t k) {
        if (k >= dim) throw std::out_of_range("CVector::basis: index out of range");
        CVector v(dim);
        v[k] = 1.0;
        return v;
    }

    std::size_t dim() const noexcept { return data_.size(); }

    Complex& operator[](std::size_t i) { return data_[i]; }
    const Complex& operator[](std::size_t i) const { return data_[i]; }

    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    CVector& operator+=(const CVector& o) {
        check_same(o);
        for (std::size_t i = 0; i < dim(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    CVector& operator-=(const CVector& o) {
        check_same(o);
        for (std::size_t i = 0; i < dim(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    CVector& operator*=(Complex s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend CVector operator+(CVector a, const CVector& b) { return a += b; }
    friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
    friend CVector operator*(Complex s, CVector a) { return a *= s; }
    friend CVector operator*(CVector a, Complex s) { return a *= s; }

    bool operator==(const CVector&) const = default;

private:
    void check_same(const CVector& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("CVector: dimension mismatch");
    }

    std::vector<Complex> data_;
};

// ⟨a|b⟩
inline Complex inner(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const CVector& v) { return std::sqrt(std::real(inner(v, v))); }

inline double max_abs_diff(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// ------------------------------------------------------------------ CMatrix

// Square complex matrix, row-major.
class CMatrix {
public:
    explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{}) {
        if (dim == 0) throw std::invalid_argument("CMatrix: dimension must be positive");
    }

    // Row-major nested initializer; must be square.
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : CMatrix(rows.size()) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) throw std::invalid_argument("CMatrix: initializer is not square");
            std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
            ++i;
        }
    }

    static CMatrix identity(std::size_t dim) {
        CMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(std::initializer_list<Complex> d) {
        CMatrix m(d.size());
        std::size_t i = 0;
        for (auto x : d) {
            m(i, i) = x;
            ++i;
        }
        return m;
    }

    // |ket⟩⟨bra|
    static CMatrix outer(const CVector& ket, const CVector& bra) {
        if (ket.dim() != bra.dim()) throw std::invalid_argument("CMatrix::outer: dimension mismatch");
        CMatrix m(ket.dim());
        for (std::size_t i = 0; i < ket.dim(); ++i)
            for (std::size_t j = 0; j < bra.dim(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    CMatrix& operator+=(const CMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    CMatrix& operator*=(Complex s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    // a += s * o, without a temporary
    CMatrix& add_scaled(const CMatrix& o, Complex s) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

    bool operator==(const CMatrix&) const = default;

private:
    void check_same(const CMatrix& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    }

    std::size_t dim_;
    std::vector<Complex> data_;
};

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matmul: dimension mismatch");
    const std::size_t n = a.dim();
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

inline CVector apply(const CMatrix& m, const CVector& v) {
    if (m.dim() != v.dim()) throw std::invalid_argument("apply: dimension mismatch");
    const std::size_t n = m.dim();
    CVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

inline CVector operator*(const CMatrix& m, const CVector& v) { return apply(m, v); }

inline CMatrix dagger(const CMatrix& m) {
    const std::size_t n = m.dim();
    CMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d(j, i) = std::conj(m(i, j));
    return d;
}

// Block (i,j) of the result is a(i,j)·b.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    CMatrix k(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t r = 0; r < nb; ++r)
                for (std::size_t c = 0; c < nb; ++c) k(i * nb + r, j * nb + c) = aij * b(r, c);
        }
    return k;
}

inline Complex trace(const CMatrix& m) {
    Complex t{};
    for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
    return m;
}

inline double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (auto x : a.entries()) m = std::max(m, std::abs(x));
    return m;
}

// max |m(i,j) - conj(m(j,i))|
inline double hermiticity_deviation(const CMatrix& m) {
    double dev = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j) dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev;
}

// ⟨a|m|b⟩
inline Complex expectation(const CVector& a, const CMatrix& m, const CVector& b) { return inner(a, apply(m, b)); }

// ------------------------------------------------------------ eigensolver

struct Eigensystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // eigenvectors in columns
};

inline constexpr double kHermitianTolerance = 1e-12;

// Cyclic Jacobi for a complex Hermitian matrix. Each rotation zeroes one
// off-diagonal pair; sweeps repeat until the off-diagonal mass vanishes.
inline Eigensystem hermitian_eig(const CMatrix& m) {
    const std::size_t n = m.dim();
    const double scale = std::max(1.0, max_abs(m));
    if (hermiticity_deviation(m) > kHermitianTolerance * scale)
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    CMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = std::real(a(i, i));
    CMatrix v = CMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    const double target = 1e-15 * scale;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r == 0.0) continue;
                const Complex phase = a(p, q) / r;  // e^{iφ}
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // G = [[c, s e^{iφ}], [-s e^{-iφ}, c]] on the (p,q) plane.
                const Complex g_pq = s * phase;
                const Complex g_qp = -s * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * g_qp;
                    a(k, q) = akp * g_pq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(g_qp) * aqk;
                    a(q, k) = std::conj(g_pq) * apk + c * aqk;
                }
                a(p, q) = a(q, p) = Complex{};
                a(p, p) = std::real(a(p, p));
                a(q, q) = std::real(a(q, q));

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * g_qp;
                    v(k, q) = vkp * g_pq + vkq * c;
                }
            }
    }
    if (off_norm() > 1e-10 * scale) throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return std::real(a(x, x)) < std::real(a(y, y)); });

    Eigensystem es{std::vector<double>(n), CMatrix(n)};
    for (std::size_t c = 0; c < n; ++c) {
        es.values[c] = std::real(a(order[c], order[c]));
        for (std::size_t r = 0; r < n; ++r) es.vectors(r, c) = v(r, order[c]);
    }
    return es;
}

// exp(-i h t) via the eigendecomposition of a time-independent Hermitian h.
inline CMatrix propagator_exact(const CMatrix& h, double t) {
    const Eigensystem es = hermitian_eig(h);
    const std::size_t n = h.dim();
    CMatrix scaled = es.vectors;
    for (std::size_t c = 0; c < n; ++c) {
        const Complex phase = std::exp(-kI * es.values[c] * t);
        for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= phase;
    }
    return matmul(scaled, dagger(es.vectors));
}

inline double min_eigenvalue(const CMatrix& m) { return hermitian_eig(m).values.front(); }

// --------------------------------------------------------------- integrators

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
};

inline constexpr std::size_t kMaxStoredSamples = 2000;

// Number of fixed steps covering [0, t_final] with step no larger than dt.
inline std::size_t step_count(double t_final, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrator: dt must be positive");
    if (!(t_final >= 0.0)) throw std::invalid_argument("integrator: t_final must be non-negative");
    const double ratio = t_final / dt;
    auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
    return std::max<std::size_t>(steps, t_final > 0.0 ? 1 : 0);
}

// Every ⌈steps/2000⌉-th step is kept, plus both endpoints.
inline std::size_t sample_stride(std::size_t steps) {
    return std::max<std::size_t>(1, (steps + kMaxStoredSamples - 1) / kMaxStoredSamples);
}

inline bool is_sampled(std::size_t step, std::size_t steps, std::size_t stride) {
    return step % stride == 0 || step == steps;
}

namespace detail {

struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
};

inline std::vector<Entry> nonzeros(const CMatrix& m) {
    std::vector<Entry> nz;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (m(i, j) != Complex{}) nz.push_back({i, j, m(i, j)});
    return nz;
}

// out = -i h psi
inline void schrodinger_rhs(const CMatrix& h, const CVector& psi, CVector& out) {
    const std::size_t n = psi.dim();
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) {
            const Complex hij = h(i, j);
            if (hij != Complex{}) s += hij * psi[j];
        }
        out[i] = -kI * s;
    }
}

}  // namespace detail

// Classical RK4 on dψ/dt = -i H(t) ψ. `hamiltonian` is any callable double -> CMatrix.
template <class HamiltonianFn>
Trajectory<CVector> integrate_schrodinger(HamiltonianFn&& hamiltonian, const CVector& psi0, double t_final, double dt) {
    if (std::abs(norm(psi0) - 1.0) > 1e-10) throw std::invalid_argument("integrate_schrodinger: initial state is not normalized");
    const std::size_t steps = step_count(t_final, dt);
    const double h = steps ? t_final / static_cast<double>(steps) : 0.0;
    const std::size_t stride = sample_stride(steps);

    Trajectory<CVector> traj;
    traj.times.push_back(0.0);
    traj.states.push_back(psi0);

    const std::size_t n = psi0.dim();
    CVector psi = psi0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (std::size_t step = 1; step <= steps; ++step) {
        const double t = static_cast<double>(step - 1) * h;
        const CMatrix h0 = hamiltonian(t);
        const CMatrix hm = hamiltonian(t + 0.5 * h);
        const CMatrix h1 = hamiltonian(t + h);
        if (h0.dim() != n) throw std::invalid_argument("integrate_schrodinger: Hamiltonian dimension mismatch");

        detail::schrodinger_rhs(h0, psi, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
        detail::schrodinger_rhs(hm, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
        detail::schrodinger_rhs(hm, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + h * k3[i];
        detail::schrodinger_rhs(h1, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        if (is_sampled(step, steps, stride)) {
            if (!(std::abs(norm(psi) - 1.0) <= 1e-6))
                throw IntegrationError("integrate_schrodinger: norm drift exceeds 1e-6 (step size too coarse)");
            traj.times.push_back(step == steps ? t_final : static_cast<double>(step) * h);
            traj.states.push_back(psi);
        }
    }
    return traj;
}

// Classical RK4 on the Lindblad master equation
//   dρ/dt = -i[H, ρ] + Σ_k (L_k ρ L_k† - ½{L_k† L_k, ρ}).
// Written as -i(H_eff ρ - ρ H_eff†) + Σ_k L_k ρ L_k† with H_eff = H - (i/2) Σ L_k† L_k.
template <class HamiltonianFn>
Trajectory<CMatrix> integrate_lindblad(HamiltonianFn&& hamiltonian, std::span<const CMatrix> collapse, const CMatrix& rho0,
                                       double t_final, double dt) {
    const std::size_t n = rho0.dim();
    if (hermiticity_deviation(rho0) > 1e-10) throw std::invalid_argument("integrate_lindblad: rho0 is not Hermitian");
    if (std::abs(trace(rho0) - 1.0) > 1e-10) throw std::invalid_argument("integrate_lindblad: rho0 does not have unit trace");
    if (min_eigenvalue(rho0) < -1e-10) throw std::invalid_argument("integrate_lindblad: rho0 is not positive semidefinite");

    CMatrix decay(n);
    std::vector<std::vector<detail::Entry>> jumps;
    for (const auto& l : collapse) {
        if (l.dim() != n) throw std::invalid_argument("integrate_lindblad: collapse operator dimension mismatch");
        decay += matmul(dagger(l), l);
        jumps.push_back(detail::nonzeros(l));
    }
    decay *= Complex{0.0, -0.5};

    const std::size_t steps = step_count(t_final, dt);
    const double h = steps ? t_final / static_cast<double>(steps) : 0.0;
    const std::size_t stride = sample_stride(steps);

    auto rhs = [&](const CMatrix& heff, const CMatrix& rho, CMatrix& out) {
        const auto nz = detail::nonzeros(heff);
        std::fill(out.entries().begin(), out.entries().end(), Complex{});
        // -i H_eff ρ
        for (const auto& e : nz)
            for (std::size_t j = 0; j < n; ++j) out(e.row, j) += -kI * e.value * rho(e.col, j);
        // +i ρ H_eff†: (ρ H_eff†)(i, r) = Σ_c ρ(i, c) conj(H_eff(r, c))
        for (const auto& e : nz)
            for (std::size_t i = 0; i < n; ++i) out(i, e.row) += kI * rho(i, e.col) * std::conj(e.value);
        for (const auto& jump : jumps)
            for (const auto& a : jump)
                for (const auto& b : jump) out(a.row, b.row) += a.value * rho(a.col, b.col) * std::conj(b.value);
    };

    Trajectory<CMatrix> traj;
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);

    CMatrix rho = rho0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (std::size_t step = 1; step <= steps; ++step) {
        const double t = static_cast<double>(step - 1) * h;
        const CMatrix h0 = hamiltonian(t) + decay;
        const CMatrix hm = hamiltonian(t + 0.5 * h) + decay;
        const CMatrix h1 = hamiltonian(t + h) + decay;

        rhs(h0, rho, k1);
        tmp = rho;
        tmp.add_scaled(k1, 0.5 * h);
        rhs(hm, tmp, k2);
        tmp = rho;
        tmp.add_scaled(k2, 0.5 * h);
        rhs(hm, tmp, k3);
        tmp = rho;
        tmp.add_scaled(k3, h);
        rhs(h1, tmp, k4);
        rho.add_scaled(k1, h / 6.0).add_scaled(k2, h / 3.0).add_scaled(k3, h / 3.0).add_scaled(k4, h / 6.0);

        if (is_sampled(step, steps, stride)) {
            if (!(std::abs(trace(rho) - 1.0) <= 1e-6))
                throw IntegrationError("integrate_lindblad: trace drift exceeds 1e-6 (step size too coarse)");
            traj.times.push_back(step == steps ? t_final : static_cast<double>(step) * h);
            traj.states.push_back(rho);
        }
    }
    return traj;
}

template <class HamiltonianFn>
Trajectory<CMatrix> integrate_lindblad(HamiltonianFn&& hamiltonian, const std::vector<CMatrix>& collapse, const CMatrix& rho0,
                                       double t_final, double dt) {
    return integrate_lindblad(std::forward<HamiltonianFn>(hamiltonian), std::span<const CMatrix>(collapse), rho0, t_final, dt);
}

}  // namespace rydgate
