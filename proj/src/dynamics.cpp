// Copyright 2026 The rydtransfer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rydtransfer/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rydtransfer/effective.hpp"
#include "rydtransfer/errors.hpp"
#include "rydtransfer/expm.hpp"

namespace rydtransfer {
namespace {

constexpr double kTraceDriftLimit = 1e-6;
constexpr std::complex<double> kI(0.0, 1.0);

// Column-stacking convention: vec(A X B) = (B^T kron A) vec(X).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

void check_trace(const ComplexMatrix& rho, std::complex<double> trace0, const char* method, std::size_t step,
                 double t) {
    const double drift = std::abs(rho.trace() - trace0);
    if (!(drift <= kTraceDriftLimit)) {
        std::ostringstream msg;
        msg << method << " propagation diverged at step " << step << " (t = " << t << " us): trace drift " << drift;
        throw NumericalInstabilityError(msg.str());
    }
}

void check_times(std::span<const double> times) {
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0)) throw DomainError("sample times must be non-negative");
        if (k > 0 && !(times[k] > times[k - 1])) throw DomainError("sample times must be strictly increasing");
    }
}

bool uniform_steps(std::span<const double> times) {
    if (times.size() < 3) return false;
    const double dt = times[1] - times[0];
    const double tol = 1e-12 * std::max(1.0, times.back());
    for (std::size_t k = 2; k < times.size(); ++k)
        if (std::abs(times[k] - times[k - 1] - dt) > tol) return false;
    return true;
}

double max_entry(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<ComplexMatrix> jump_operators(const BasisSpace& space, const NoiseParams& noise) {
    if (noise.dephasing < 0 || noise.decay < 0) throw DomainError("noise rates must be non-negative");
    const int n = space.n_atoms();
    const int dim = space.dimension();
    std::vector<ComplexMatrix> ops;

    if (noise.dephasing > 0) {
        if (noise.dephasing_model == DephasingModel::collective) {
            const double amp = std::sqrt(angular(noise.dephasing) / 2);
            ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
            for (int s = 0; s < dim; ++s) a(s, s) = amp * (2.0 * space.excitations(s) - n);
            ops.push_back(std::move(a));
        } else {
            const double amp = std::sqrt(angular(noise.dephasing));
            for (int j = 0; j < n; ++j) {
                ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
                for (int s = 0; s < dim; ++s) a(s, s) = (space.state(s) >> j & 1u) ? amp : -amp;
                ops.push_back(std::move(a));
            }
        }
    }
    if (noise.decay > 0) {
        const double amp = std::sqrt(angular(noise.decay));
        for (int j = 0; j < n; ++j) {
            ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
            for (int s = 0; s < dim; ++s) {
                const std::uint32_t pattern = space.state(s);
                if (!(pattern >> j & 1u)) continue;
                a(space.index_of(pattern ^ (1u << j)), s) = amp;
            }
            ops.push_back(std::move(a));
        }
    }
    return ops;
}

Lindbladian build_lindbladian(const BasisSpace& space, const ComplexMatrix& h, const NoiseParams& noise) {
    const int d = space.dimension();
    if (h.rows() != d || h.cols() != d) throw DomainError("Hamiltonian does not match the basis");
    const ComplexMatrix ident = ComplexMatrix::Identity(d, d);

    Lindbladian l;
    l.dim = d;
    l.generator = -kI * (kron(ident, h) - kron(h.transpose(), ident));
    double rate = max_entry(h);
    for (const ComplexMatrix& a : jump_operators(space, noise)) {
        const ComplexMatrix ada = a.adjoint() * a;
        l.generator += kron(a.conjugate(), a) - 0.5 * kron(ident, ada) - 0.5 * kron(ada.transpose(), ident);
        rate = std::max(rate, max_entry(ada));
    }
    l.max_rate_mhz = rate / kTwoPi;
    return l;
}

ComplexVector vectorize(const ComplexMatrix& rho) { return rho.reshaped(); }

ComplexMatrix unvectorize(const ComplexVector& v, int dim) { return v.reshaped(dim, dim); }

void propagate(const Lindbladian& l, const ComplexMatrix& rho0, std::span<const double> times,
               const StateObserver& observer) {
    check_times(times);
    if (rho0.rows() != l.dim || rho0.cols() != l.dim) throw DomainError("initial state does not match the basis");
    ComplexVector v = vectorize(rho0);
    double t = 0;
    const bool uniform = uniform_steps(times);
    ComplexMatrix cached;
    if (uniform) cached = expm(l.generator * (times[1] - times[0]));

    for (std::size_t k = 0; k < times.size(); ++k) {
        const double dt = times[k] - t;
        if (dt > 0) {
            if (uniform && k > 0)
                v = cached * v;
            else
                v = expm(l.generator * dt) * v;
        }
        t = times[k];
        const ComplexMatrix rho = unvectorize(v, l.dim);
        check_trace(rho, rho0.trace(), "exponential", k, t);
        observer(k, rho);
    }
}

std::vector<ComplexMatrix> propagate(const Lindbladian& l, const ComplexMatrix& rho0, std::span<const double> times) {
    std::vector<ComplexMatrix> out;
    out.reserve(times.size());
    propagate(l, rho0, times, [&out](std::size_t, const ComplexMatrix& rho) { out.push_back(rho); });
    return out;
}

void propagate_rk4(const ComplexMatrix& h, std::span<const ComplexMatrix> jumps, const ComplexMatrix& rho0,
                   std::span<const double> times, const StateObserver& observer, double step) {
    check_times(times);
    // rho' = K rho + rho K^dag + sum A rho A^dag with K = -iH - 1/2 sum A^dag A
    ComplexMatrix k_op = -kI * h;
    double rate = max_entry(h);
    for (const ComplexMatrix& a : jumps) {
        const ComplexMatrix ada = a.adjoint() * a;
        k_op -= 0.5 * ada;
        rate = std::max(rate, max_entry(ada));
    }
    if (step <= 0) step = rate > 0 ? 1.0 / (200.0 * rate / kTwoPi) : 1.0;
    auto rhs = [&](const ComplexMatrix& rho) {
        ComplexMatrix out = k_op * rho;
        out += rho * k_op.adjoint();
        for (const ComplexMatrix& a : jumps) out += a * rho * a.adjoint();
        return out;
    };

    ComplexMatrix rho = rho0;
    double t = 0;
    std::size_t global_step = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double span = times[k] - t;
        if (span > 0) {
            const auto n_steps = static_cast<std::size_t>(std::ceil(span / step - 1e-9));
            const double hh = span / static_cast<double>(n_steps);
            for (std::size_t s = 0; s < n_steps; ++s, ++global_step) {
                const ComplexMatrix k1 = rhs(rho);
                const ComplexMatrix k2 = rhs(rho + 0.5 * hh * k1);
                const ComplexMatrix k3 = rhs(rho + 0.5 * hh * k2);
                const ComplexMatrix k4 = rhs(rho + hh * k3);
                rho += hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            check_trace(rho, rho0.trace(), "rk4", global_step, times[k]);
        }
        t = times[k];
        observer(k, rho);
    }
}

namespace {

// Closed-system RK4 on |psi>. RK4 shrinks the norm at O(h^5) globally, so the
// step is 2.5x finer than the density-matrix integrator's; vectors are cheap.
void propagate_rk4_state(const ComplexMatrix& h, const ComplexVector& psi0, std::span<const double> times,
                         const StateObserver& observer) {
    check_times(times);
    const double rate = max_entry(h);
    const double step = rate > 0 ? 1.0 / (500.0 * rate / kTwoPi) : 1.0;
    const ComplexMatrix k_op = -kI * h;
    ComplexVector psi = psi0;
    double t = 0;
    std::size_t global_step = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double span = times[k] - t;
        if (span > 0) {
            const auto n_steps = static_cast<std::size_t>(std::ceil(span / step - 1e-9));
            const double hh = span / static_cast<double>(n_steps);
            for (std::size_t s = 0; s < n_steps; ++s, ++global_step) {
                const ComplexVector k1 = k_op * psi;
                const ComplexVector k2 = k_op * (psi + 0.5 * hh * k1);
                const ComplexVector k3 = k_op * (psi + 0.5 * hh * k2);
                const ComplexVector k4 = k_op * (psi + hh * k3);
                psi += hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        t = times[k];
        const ComplexMatrix rho = psi * psi.adjoint();
        check_trace(rho, 1.0, "rk4", global_step, t);
        observer(k, rho);
    }
}

}  // namespace

void StateDiagnostics::absorb(const ComplexMatrix& rho, const BasisSpace& space) {
    max_trace_drift = std::max(max_trace_drift, std::abs(rho.trace() - 1.0));
    max_hermiticity = std::max(max_hermiticity, max_entry(rho - rho.adjoint()));
    const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
    min_eigenvalue = std::min(min_eigenvalue, eig.eigenvalues().minCoeff());
    double leak = 0;
    for (int s = 0; s < space.dimension(); ++s)
        if (space.excitations(s) >= 2) leak += rho(s, s).real();
    max_leakage = std::max(max_leakage, leak);
}

void StateDiagnostics::merge(const StateDiagnostics& other) {
    max_trace_drift = std::max(max_trace_drift, other.max_trace_drift);
    max_hermiticity = std::max(max_hermiticity, other.max_hermiticity);
    min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
    max_leakage = std::max(max_leakage, other.max_leakage);
}

FidelityTrace fidelity_trace(std::span<const ComplexMatrix> states, std::span<const double> times,
                             const BasisSpace& space, int target) {
    const int n = space.n_atoms();
    if (target < 0 || target >= n) throw DomainError("target site out of range");
    if (states.size() != times.size()) throw DomainError("one state per time is required");
    FidelityTrace tr;
    tr.times.assign(times.begin(), times.end());
    tr.fidelity.resize(states.size());
    tr.populations.resize(static_cast<Eigen::Index>(states.size()), n);
    for (std::size_t k = 0; k < states.size(); ++k) {
        for (int j = 0; j < n; ++j)
            tr.populations(static_cast<Eigen::Index>(k), j) = states[k](space.single(j), space.single(j)).real();
        tr.fidelity[k] = tr.populations(static_cast<Eigen::Index>(k), target);
    }
    return tr;
}

Peak first_peak(std::span<const double> times, std::span<const double> values) {
    const std::size_t n = values.size();
    const double window = times.empty() ? 0.0 : times.back();
    if (n < 3 || times.size() != n) throw NoPeakError("trace needs at least 3 samples", window);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double f = values[i];
        if (!(f >= values[i - 1] && f >= values[i + 1])) continue;
        if (f == values[i - 1]) continue;  // plateau: keep its left edge only
        double left_min = f;
        for (std::size_t j = i; j-- > 0 && values[j] <= f;) left_min = std::min(left_min, values[j]);
        double right_min = f;
        for (std::size_t j = i + 1; j < n && values[j] <= f; ++j) right_min = std::min(right_min, values[j]);
        const double floor = std::max(0.05, 0.2 * f);
        if (f - left_min < floor || f - right_min < floor) continue;

        // Vertex of the parabola through (t_{i-1}, t_i, t_{i+1}).
        const double x0 = times[i - 1] - times[i], x2 = times[i + 1] - times[i];
        const double y0 = values[i - 1] - f, y2 = values[i + 1] - f;
        const double denom = x0 * x2 * (x0 - x2);
        const double a = (x2 * y0 - x0 * y2) / denom;
        const double b = (x0 * x0 * y2 - x2 * x2 * y0) / denom;
        Peak p{f, times[i], i};
        if (a < 0 && values[i + 1] < f) {
            const double x = std::clamp(-b / (2 * a), x0, x2);
            p.time = times[i] + x;
            p.fidelity = f + a * x * x + b * x;
        }
        return p;
    }
    std::ostringstream msg;
    msg << "no fidelity peak within " << window << " us";
    throw NoPeakError(msg.str(), window);
}

Peak first_peak(const FidelityTrace& trace) { return first_peak(trace.times, trace.fidelity); }

std::vector<double> time_grid(double t_max, int n_samples) {
    if (!(t_max > 0)) throw DomainError("time window must be positive");
    if (n_samples < 3) throw DomainError("at least 3 samples are required");
    std::vector<double> t(n_samples);
    for (int k = 0; k < n_samples; ++k) t[k] = t_max * k / (n_samples - 1);
    return t;
}

FidelityTrace evolve_trace(const ArrayGeometry& geom, const DriveParams& drive, const NoiseParams& noise, int n_max,
                           std::span<const double> times, int target, StateDiagnostics* diagnostics,
                           Propagator method) {
    const BasisSpace space(geom.size(), n_max);
    const int n = geom.size();
    if (target < 0 || target >= n) throw DomainError("target site out of range");
    const ComplexMatrix h = build_hamiltonian(space, geom, drive);
    ComplexMatrix rho0 = ComplexMatrix::Zero(space.dimension(), space.dimension());
    rho0(space.single(0), space.single(0)) = 1.0;

    FidelityTrace tr;
    tr.times.assign(times.begin(), times.end());
    tr.fidelity.resize(times.size());
    tr.populations.resize(static_cast<Eigen::Index>(times.size()), n);
    auto record = [&](std::size_t k, const ComplexMatrix& rho) {
        const auto row = static_cast<Eigen::Index>(k);
        for (int j = 0; j < n; ++j) tr.populations(row, j) = rho(space.single(j), space.single(j)).real();
        tr.fidelity[k] = tr.populations(row, target);
        if (diagnostics) diagnostics->absorb(rho, space);
    };
    if (method == Propagator::exponential && noise.ideal()) {
        // Closed system: evolve |psi> in the eigenbasis of H instead of the superoperator.
        check_times(times);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
        const ComplexMatrix& vecs = eig.eigenvectors();
        const ComplexVector coeff = vecs.adjoint().col(space.single(0));
        ComplexVector phased(coeff.size());
        for (std::size_t k = 0; k < times.size(); ++k) {
            for (Eigen::Index i = 0; i < coeff.size(); ++i)
                phased(i) = coeff(i) * std::polar(1.0, -eig.eigenvalues()(i) * times[k]);
            const ComplexVector psi = vecs * phased;
            record(k, psi * psi.adjoint());
        }
    } else if (method == Propagator::exponential) {
        propagate(build_lindbladian(space, h, noise), rho0, times, record);
    } else if (noise.ideal()) {
        ComplexVector psi0 = ComplexVector::Zero(space.dimension());
        psi0(space.single(0)) = 1.0;
        propagate_rk4_state(h, psi0, times, record);
    } else {
        const std::vector<ComplexMatrix> jumps = jump_operators(space, noise);
        propagate_rk4(h, jumps, rho0, times, record);
    }
    return tr;
}

TransferResult simulate_transfer(const ArrayGeometry& geom, const DriveParams& drive, const NoiseParams& noise,
                                 const TransferSettings& settings) {
    const int n = geom.size();
    const int target = settings.target.value_or(n - 1);
    const bool explicit_window = settings.t_max.has_value();
    double window =
        explicit_window ? *settings.t_max : default_window(drive, geom.nominal_nn(), geom.nominal_nnn(), n);
    if (!(window > 0)) throw DomainError("time window must be positive");

    for (int attempt = 0;; ++attempt) {
        TransferResult r;
        r.ideal = noise.ideal();
        r.window = window;
        const std::vector<double> times = time_grid(window, settings.n_samples);
        r.trace = evolve_trace(geom, drive, noise, settings.n_max, times, target, &r.diagnostics, settings.method);
        try {
            const Peak p = first_peak(r.trace);
            r.fidelity = p.fidelity;
            r.transfer_time = p.time;
        } catch (const NoPeakError&) {
            if (explicit_window || attempt >= settings.max_doublings) throw;
            window *= 2;
            continue;
        }
        if (!settings.keep_populations) r.trace.populations.resize(0, 0);
        return r;
    }
}

void write_trace_csv(std::ostream& out, const FidelityTrace& trace) {
    const auto n = trace.populations.cols();
    out << "t_us,fidelity";
    for (Eigen::Index j = 0; j < n; ++j) out << ",pop_" << j + 1;
    out << '\n';
    out << std::setprecision(12);
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        out << trace.times[k] << ',' << trace.fidelity[k];
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << trace.populations(static_cast<Eigen::Index>(k), j);
        out << '\n';
    }
}

}  // namespace rydtransfer
