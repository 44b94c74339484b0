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

#include "rydtransfer/effective.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rydtransfer/errors.hpp"

namespace rydtransfer {
namespace {

constexpr double kResonanceGuard = 1e-6;

void require_off_resonant(double denominator, const char* what) {
    if (std::abs(denominator) < kResonanceGuard) {
        std::ostringstream msg;
        msg << "resonant denominator " << what << " = " << denominator << " MHz (facilitation condition)";
        throw ResonanceError(msg.str());
    }
}

void require_weak_coupling_inputs(const DriveParams& d, double v_nn, double v_nnn, int n_atoms) {
    if (n_atoms < 4) throw DomainError("effective model needs N >= 4");
    require_off_resonant(d.delta0, "Delta0");
    require_off_resonant(d.delta, "Delta");
    require_off_resonant(d.delta0 + v_nn, "Delta0 + V_NN");
    require_off_resonant(d.delta + v_nn, "Delta + V_NN");
    require_off_resonant(d.delta0 + v_nnn, "Delta0 + V_NNN");
    require_off_resonant(d.delta + v_nnn, "Delta + V_NNN");
}

// Symmetric second-order exchange between a marginal and a bulk atom:
// sum over both intermediate atoms of W_a W_b V / (2 D_k (D_k + V)).
long double mixed_exchange(long double wa, long double wb, long double v, long double da, long double db) {
    return wa * wb * v / (2 * da * (da + v)) + wa * wb * v / (2 * db * (db + v));
}

long double bulk_exchange(long double w, long double v, long double d) { return w * w * v / (d * (d + v)); }

EffectiveCouplings couplings_for(double omega_marginal, const DriveParams& d, double v_nn, double v_nnn,
                                 int n_atoms, CouplingVariant variant) {
    require_weak_coupling_inputs(d, v_nn, v_nnn, n_atoms);
    EffectiveCouplings c;
    c.variant = variant;
    c.j0 = static_cast<double>(mixed_exchange(omega_marginal, d.omega, v_nn, d.delta0, d.delta));
    c.j = static_cast<double>(bulk_exchange(d.omega, v_nn, d.delta));
    c.j0p = static_cast<double>(mixed_exchange(omega_marginal, d.omega, v_nnn, d.delta0, d.delta));
    c.jp = static_cast<double>(bulk_exchange(d.omega, v_nnn, d.delta));

    std::vector<double> rabi(n_atoms), detuning(n_atoms);
    for (int s = 0; s < n_atoms; ++s) {
        const bool marginal = DriveParams::is_marginal(s, n_atoms);
        rabi[s] = marginal ? omega_marginal : d.omega;
        detuning[s] = marginal ? d.delta0 : d.delta;
    }
    c.onsite.resize(n_atoms);
    for (int s = 0; s < n_atoms; ++s) c.onsite[s] = onsite_potential(s, rabi, detuning, v_nn, v_nnn);
    return c;
}

}  // namespace

double onsite_potential(int site, std::span<const double> rabi, std::span<const double> detuning, double v_nn,
                        double v_nnn) {
    const int n = static_cast<int>(rabi.size());
    const long double dj = detuning[site];
    long double value = dj + 2.0L * rabi[site] * rabi[site] / dj;
    for (int k = 0; k < n; ++k) {
        const int sep = std::abs(k - site);
        if (sep != 1 && sep != 2) continue;
        const long double v = sep == 1 ? v_nn : v_nnn;
        const long double w = rabi[k];
        const long double dk = detuning[k];
        value += w * w * v / (dk * (dk + v));
    }
    return static_cast<double>(value);
}

EffectiveCouplings wc_couplings(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms) {
    return couplings_for(drive.omega0, drive, v_nn, v_nnn, n_atoms, CouplingVariant::weak_coupling);
}

EffectiveCouplings uniform_couplings(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms) {
    return couplings_for(drive.omega, drive, v_nn, v_nnn, n_atoms, CouplingVariant::uniform);
}

RealMatrix local_effective_hamiltonian(const EffectiveCouplings& c, int n_atoms) {
    const int n = n_atoms;
    if (n < 4 || static_cast<int>(c.onsite.size()) != n) throw DomainError("couplings do not match N");
    RealMatrix h = RealMatrix::Zero(n, n);
    auto set = [&h](int a, int b, double v) {
        h(a, b) = v;
        h(b, a) = v;
    };
    for (int j = 0; j + 1 < n; ++j) {
        const bool marginal = j == 0 || j + 1 == n - 1;
        set(j, j + 1, marginal ? c.j0 : c.j);
    }
    for (int j = 0; j + 2 < n; ++j) {
        const bool marginal = j == 0 || j + 2 == n - 1;
        set(j, j + 2, marginal ? c.j0p : c.jp);
    }
    for (int j = 0; j < n; ++j) h(j, j) = c.onsite[j];
    return h;
}

RealMatrix h0_matrix(double j, int n_atoms) {
    const int n = n_atoms;
    if (n < 4) throw DomainError("H0 needs N >= 4");
    RealMatrix h = RealMatrix::Zero(n, n);
    h(0, 0) = 2 * j;
    h(n - 1, n - 1) = 2 * j;
    h(1, 1) += j;
    h(n - 2, n - 2) += j;
    for (int k = 1; k + 1 <= n - 2; ++k) {
        h(k, k + 1) = j;
        h(k + 1, k) = j;
    }
    return h;
}

RealMatrix h0_reduced(double j, int n_atoms) { return h0_matrix(j, n_atoms).block(1, 1, n_atoms - 2, n_atoms - 2); }

std::vector<double> h0_spectrum(double j, int n_atoms) {
    if (n_atoms < 4) throw DomainError("H0 needs N >= 4");
    const int m = n_atoms - 2;
    std::vector<double> eps(m);
    for (int p = 1; p <= m; ++p) eps[p - 1] = 2 * j * std::cos((p - 1) * std::numbers::pi / m);
    return eps;
}

Eigen::VectorXd zeno_bulk_state(int n_atoms) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n_atoms);
    v.segment(1, n_atoms - 2).setConstant(1.0 / std::sqrt(static_cast<double>(n_atoms - 2)));
    return v;
}

WcReduction reduce_to_wc(const EffectiveCouplings& c, int n_atoms) {
    const int n = n_atoms;
    if (n < 4 || static_cast<int>(c.onsite.size()) != n) throw DomainError("couplings do not match N");
    const long double bulk = n - 2;
    long double bulk_sum = 0;
    for (int k = 1; k <= n - 2; ++k) bulk_sum += c.onsite[k];

    WcReduction r;
    r.n_atoms = n;
    r.j_w = static_cast<double>((static_cast<long double>(c.j0) + c.j0p) / std::sqrt(bulk));
    const long double j = c.j;
    const long double i_w = (bulk_sum - 2 * j) / bulk + 2.0L * (n - 4) * c.jp / bulk - c.onsite[0] + 2 * j;
    r.i_w = static_cast<double>(i_w);
    r.h_wc << 0, r.j_w, 0, r.j_w, r.i_w, r.j_w, 0, r.j_w, 0;
    return r;
}

double estimate_transfer_time(double j_w) {
    if (j_w == 0) throw DomainError("J_W = 0: no direct exchange between the end atoms");
    return 1.0 / (2.0 * std::numbers::sqrt2 * std::abs(j_w));
}

double second_order_transfer_time(double j_w, double i_w) {
    if (j_w == 0) throw DomainError("J_W = 0: no direct exchange between the end atoms");
    return std::abs(i_w) / (4.0 * j_w * j_w);
}

double default_window(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms) {
    const WcReduction w = reduce_to_wc(wc_couplings(drive, v_nn, v_nnn, n_atoms), n_atoms);
    double t = estimate_transfer_time(w.j_w);
    if (std::abs(w.i_w) > 10 * std::abs(w.j_w)) t = second_order_transfer_time(w.j_w, w.i_w);
    return 3 * t;
}

ModResult solve_mod_detuning(const DriveParams& drive, double v_nn, double v_nnn, int n_atoms,
                             const ModOptions& options) {
    const double delta = drive.delta;
    if (delta == 0) throw DomainError("bulk detuning must be nonzero");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto i_w = [&](double delta0) {
        DriveParams d = drive;
        d.delta0 = delta0;
        try {
            return reduce_to_wc(wc_couplings(d, v_nn, v_nnn, n_atoms), n_atoms).i_w;
        } catch (const ResonanceError&) {
            return nan;
        }
    };
    auto brackets = [](double fa, double fb) {
        return std::isfinite(fa) && std::isfinite(fb) && (fa == 0 || fb == 0 || std::signbit(fa) != std::signbit(fb));
    };

    // March outward from Delta0 = Delta, alternating above and below.
    double lo = nan, hi = nan;
    const double f_center = i_w(delta);
    double up_prev = 1.0, down_prev = 1.0;
    double f_up_prev = f_center, f_down_prev = f_center;
    const double step = options.scan_step;
    for (int k = 1;; ++k) {
        const double up = 1.0 + k * step, down = 1.0 - k * step;
        const bool up_ok = up <= options.ratio_high + 1e-12;
        const bool down_ok = down >= options.ratio_low - 1e-12;
        if (!up_ok && !down_ok) break;
        if (up_ok) {
            const double f = i_w(up * delta);
            if (brackets(f_up_prev, f)) {
                lo = up_prev * delta;
                hi = up * delta;
                break;
            }
            up_prev = up;
            f_up_prev = f;
        }
        if (down_ok) {
            const double f = i_w(down * delta);
            if (brackets(f_down_prev, f)) {
                lo = down_prev * delta;
                hi = down * delta;
                break;
            }
            down_prev = down;
            f_down_prev = f;
        }
    }
    if (!std::isfinite(lo)) {
        std::ostringstream msg;
        msg << "I_W does not change sign for Delta0/Delta in [" << options.ratio_low << ", " << options.ratio_high
            << "]";
        throw NoRootError(msg.str());
    }

    ModResult r;
    double a = lo, b = hi;
    double fa = i_w(a), fb = i_w(b);
    while (std::abs(b - a) > options.bracket_tolerance && fa != 0 && fb != 0) {
        const double mid = 0.5 * (a + b);
        const double fm = i_w(mid);
        ++r.iterations;
        if (std::signbit(fm) == std::signbit(fa)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    r.bracket_low = std::min(a, b);
    r.bracket_high = std::max(a, b);

    // Secant polish inside the final bracket.
    double x = std::abs(fa) < std::abs(fb) ? a : b;
    double fx = i_w(x);
    double x_prev = x == a ? b : a;
    double f_prev = x == a ? fb : fa;
    for (int it = 0; it < 50 && std::abs(fx) >= options.residual_tolerance * 1e-3; ++it) {
        if (fx == f_prev) break;
        const double next = x - fx * (x - x_prev) / (fx - f_prev);
        if (!(next >= r.bracket_low - 1e-9 && next <= r.bracket_high + 1e-9)) break;
        const double f_next = i_w(next);
        ++r.iterations;
        x_prev = x;
        f_prev = fx;
        x = next;
        fx = f_next;
    }
    r.delta0_root = x;
    r.residual = fx;
    r.ratio = x / delta;
    if (!(std::abs(fx) < options.residual_tolerance))
        throw NoRootError("root polish did not reach the residual tolerance");
    return r;
}

RealMatrix propagate_effective(const ComplexMatrix& h_mhz, const ComplexVector& psi0, std::span<const double> times) {
    if (h_mhz.rows() != h_mhz.cols() || h_mhz.rows() != psi0.size())
        throw DomainError("Hamiltonian and initial state sizes differ");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h_mhz);
    const ComplexMatrix& vecs = eig.eigenvectors();
    const Eigen::VectorXd& vals = eig.eigenvalues();
    const ComplexVector coeff = vecs.adjoint() * psi0;
    RealMatrix pops(static_cast<Eigen::Index>(times.size()), psi0.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        ComplexVector phased(coeff.size());
        for (Eigen::Index i = 0; i < coeff.size(); ++i)
            phased(i) = coeff(i) * std::polar(1.0, -angular(vals(i)) * times[k]);
        pops.row(static_cast<Eigen::Index>(k)) = (vecs * phased).cwiseAbs2().transpose();
    }
    return pops;
}

}  // namespace rydtransfer
