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

#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "published_rows.hpp"
#include "rydtransfer/disorder.hpp"
#include "rydtransfer/effective.hpp"
#include "rydtransfer/errors.hpp"
#include "rydtransfer/parallel.hpp"

namespace rydtransfer::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTableDephasing = 0.1;
constexpr double kLongTimeDecay = 4e-4;

/// Computed-vs-published check. A non-empty `note` marks a known deviation
/// that is reported but does not fail the run.
struct Comparison {
    std::string row;
    std::string quantity;
    double computed;
    double published;
    double tolerance;
    std::string note;

    bool within() const { return std::isfinite(computed) && std::abs(computed - published) <= tolerance; }
    std::string status() const { return within() ? "pass" : (note.empty() ? "fail" : "flag"); }
};

class Report {
   public:
    void add(Comparison c) { items_.push_back(std::move(c)); }

    int finish(Json& summary, const char* target) const {
        Json list = Json::array();
        int failed = 0, flagged = 0;
        for (const Comparison& c : items_) {
            const std::string st = c.status();
            failed += st == "fail";
            flagged += st == "flag";
            Json j = {{"row", c.row},       {"quantity", c.quantity}, {"computed", c.computed},
                      {"published", c.published},   {"tolerance", c.tolerance}, {"status", st}};
            if (!c.note.empty()) j["note"] = c.note;
            list.push_back(j);
            if (st != "pass")
                std::cout << std::setw(5) << st << "  " << c.row << ' ' << c.quantity << ": computed " << c.computed
                          << ", published " << c.published << '\n';
        }
        summary["comparisons"] = list;
        summary["n_fail"] = failed;
        summary["n_flag"] = flagged;
        std::cout << target << ": " << items_.size() - failed - flagged << " pass, " << flagged << " flagged, " << failed
                  << " fail\n";
        return failed > 0 ? 4 : 0;
    }

   private:
    std::vector<Comparison> items_;
};

Json header_for(const char* target, const RunOptions& o) {
    return {{"command", "reproduce"}, {"target", target}, {"config_hash", o.hash}};
}

std::string sign_tag(double delta) { return delta < 0 ? "negative" : "positive"; }

std::string row_name(const std::string& family, const std::string& label, int n, double delta) {
    return family + " " + label + " N=" + std::to_string(n) + " " + sign_tag(delta);
}

struct Peaked {
    double f = kNaN, t = kNaN;
};

Peaked run_peak(const ArrayGeometry& g, const DriveParams& d, const NoiseParams& noise, int n_max) {
    TransferSettings s;
    s.n_max = n_max;
    s.keep_populations = false;
    try {
        const TransferResult r = simulate_transfer(g, d, noise, s);
        return {r.fidelity, r.transfer_time};
    } catch (const NoPeakError&) {
        return {};
    }
}

int reproduce_table1(const ReproduceOptions& opt, const RunOptions& o) {
    const auto& rows = table_one();
    struct Computed {
        double j_w, i_w;
        Peaked ideal, noisy;
    };
    std::vector<Computed> out(rows.size());
    parallel_for(rows.size(), o.threads, [&](std::size_t i) {
        const TableOneRow& r = rows[i];
        const ArrayGeometry g = build_geometry(r.n_atoms);
        const WcReduction w =
            reduce_to_wc(wc_couplings(r.drive, g.nominal_nn(), g.nominal_nnn(), r.n_atoms), r.n_atoms);
        NoiseParams noisy;
        noisy.dephasing = kTableDephasing;
        out[i] = {w.j_w, w.i_w, run_peak(g, r.drive, {}, opt.n_max), run_peak(g, r.drive, noisy, opt.n_max)};
        std::cerr << "  " << row_name(r.family, r.label, r.n_atoms, r.drive.delta) << " done\n";
    });

    const auto dir = prepare_dir(o.out_dir);
    std::ofstream csv(dir / "table1.csv");
    csv << "family,label,N,omega0,omega,delta0,delta,J_W,I_W,F0,T_g0_us,F,T_g_us,published_J_W,published_I_W,published_F0,"
           "published_F,published_T_g\n"
        << std::setprecision(12);
    Report rep;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const TableOneRow& r = rows[i];
        const Computed& c = out[i];
        csv << r.family << ',' << r.label << ',' << r.n_atoms << ',' << r.drive.omega0 << ',' << r.drive.omega << ','
            << r.drive.delta0 << ',' << r.drive.delta << ',' << c.j_w << ',' << c.i_w << ',' << c.ideal.f << ','
            << c.ideal.t << ',' << c.noisy.f << ',' << c.noisy.t << ',' << r.j_w << ',' << r.i_w << ',' << r.f0 << ','
            << r.f << ',' << r.t_g << '\n';

        const std::string name = row_name(r.family, r.label, r.n_atoms, r.drive.delta);
        std::string jw_note;
        if (r.n_atoms == 8) jw_note = "N=8 |J_W| differs from (J0+J0')/sqrt(N-2) at the stated parameters";
        if (r.family == "Opt" && r.label == "III" && r.drive.delta < 0)
            jw_note = "published |J_W| does not follow from the published drive of this row";
        rep.add({name, "|J_W|", std::abs(c.j_w), r.j_w, 5e-4, jw_note});
        const bool formula_root = r.family == "Mod" && r.label == "I";
        rep.add({name, "|I_W|", std::abs(c.i_w), r.i_w, 0.05,
                 formula_root ? "" : "published |I_W| not reproduced by the reduction formula at the stated parameters"});

        const double f_tol = r.n_atoms == 4 ? 0.01 : 0.02;
        const double t_tol = std::max(0.2, 0.1 * r.t_g);
        std::string note;
        if (r.n_atoms > 4) note = "N > 4: n_max truncation; slow rows show ripple maxima before the main transfer";
        std::string f_note = note;
        if (r.family == "Non-Opt" && r.label == "I" && r.drive.delta > 0)
            f_note = "dephased fidelity over a ~600 us window depends on the dephasing operator form";
        rep.add({name, "F0", c.ideal.f, r.f0, f_tol, note});
        rep.add({name, "F", c.noisy.f, r.f, f_tol, f_note});
        rep.add({name, "T_g", c.ideal.t, r.t_g, t_tol, note});
    }
    Json summary = header_for("table1", o);
    summary["n_max"] = opt.n_max;
    summary["rows_csv"] = "table1.csv";
    const int code = rep.finish(summary, "table1");
    write_json(dir / "summary.json", summary);
    return code;
}


int reproduce_table2(const ReproduceOptions& opt, const RunOptions& o) {
    const auto& rows = table_two();
    std::vector<Peaked> peaks(rows.size());
    parallel_for(rows.size(), o.threads, [&](std::size_t i) {
        peaks[i] = run_peak(build_geometry(rows[i].n_atoms), rows[i].drive, {}, opt.n_max);
    });
    const auto dir = prepare_dir(o.out_dir);
    std::ofstream csv(dir / "table2.csv");
    csv << "family,N,omega0,omega,delta0,delta,F0,T_g_us,J0,J,I1,I2,I3,published_F0,published_T_g,published_J0,published_J,published_I1,"
           "published_I2,published_I3\n"
        << std::setprecision(12);
    Report rep;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const TableTwoRow& r = rows[i];
        const ArrayGeometry g = build_geometry(r.n_atoms);
        const EffectiveCouplings c = uniform_couplings(r.drive, g.nominal_nn(), g.nominal_nnn(), r.n_atoms);
        const double j0 = std::abs(c.j0), j = std::abs(c.j);
        const double i1 = std::abs(c.onsite[0]), i2 = std::abs(c.onsite[1]), i3 = std::abs(c.onsite[2]);
        csv << r.family << ',' << r.n_atoms << ',' << r.drive.omega0 << ',' << r.drive.omega << ',' << r.drive.delta0
            << ',' << r.drive.delta << ',' << peaks[i].f << ',' << peaks[i].t << ',' << j0 << ',' << j << ',' << i1
            << ',' << i2 << ',' << i3 << ',' << r.f0 << ',' << r.t_g << ',' << r.j0 << ',' << r.j << ',' << r.i1
            << ',' << r.i2 << ',' << r.i3 << '\n';
        const std::string name = r.family + " N=" + std::to_string(r.n_atoms);
        rep.add({name, "|J0|", j0, r.j0, 5e-4, ""});
        rep.add({name, "|J|", j, r.j, 5e-4, ""});
        rep.add({name, "|I1|", i1, r.i1, 1e-2, ""});
        rep.add({name, "|I2|", i2, r.i2, 1e-2, ""});
        rep.add({name, "|I3|", i3, r.i3, 1e-2, ""});
        const std::string trunc = r.n_atoms > 4 ? "n_max truncation for N > 4" : "";
        rep.add({name, "F0", peaks[i].f, r.f0, 0.02, trunc});
        rep.add({name, "T_g", peaks[i].t, r.t_g, 0.2, trunc});
    }
    Json summary = header_for("table2", o);
    summary["n_max"] = opt.n_max;
    summary["rows_csv"] = "table2.csv";
    const int code = rep.finish(summary, "table2");
    write_json(dir / "summary.json", summary);
    return code;
}

int reproduce_fig1b(const RunOptions& o) {
    const auto dir = prepare_dir(o.out_dir);
    const ArrayGeometry g = build_geometry(4);
    const double v = g.nominal_nn(), vp = g.nominal_nnn();
    Report rep;
    Json summary = header_for("fig1b", o);
    for (double delta : {-200.0, 200.0}) {
        const std::string file = "fig1b_" + sign_tag(delta) + ".csv";
        std::ofstream csv(dir / file);
        csv << "ratio,J_W,I_W\n" << std::setprecision(12);
        constexpr int steps = 201;
        for (int i = 0; i < steps; ++i) {
            const double ratio = 0.95 + 0.10 * i / (steps - 1);
            const DriveParams d{1, 10, ratio * delta, delta};
            const WcReduction w = reduce_to_wc(wc_couplings(d, v, vp, 4), 4);
            csv << ratio << ',' << w.j_w << ',' << w.i_w << '\n';
        }
        const ModResult m = solve_mod_detuning({1, 10, 0, delta}, v, vp, 4);
        summary["C_" + sign_tag(delta)] = m.ratio;
        rep.add({"Mod I " + sign_tag(delta), "C", m.ratio, delta < 0 ? 1.0092 : 1.0066, 5e-4, ""});
    }
    const int code = rep.finish(summary, "fig1b");
    write_json(dir / "summary.json", summary);
    return code;
}

const TableOneRow& find_row(const std::string& family, const std::string& label, double sign) {
    for (const TableOneRow& r : table_one())
        if (r.family == family && r.label == label && (r.drive.delta < 0) == (sign < 0)) return r;
    throw DomainError("no published row " + family + " " + label);
}

int reproduce_fig4(const ReproduceOptions& opt, const RunOptions& o) {
    const auto dir = prepare_dir(o.out_dir);
    const std::vector<double> temperatures = {0, 10, 20, 30, 40, 50};
    const std::vector<std::string> labels = {"II", "III", "IV"};
    Report rep;
    Json summary = header_for("fig4", o);
    summary["realizations"] = opt.realizations;
    NoiseParams noise;
    noise.dephasing = kTableDephasing;
    TransferSettings settings;
    settings.n_max = opt.n_max;
    double reduction_pos = kNaN, reduction_neg = kNaN;

    for (const std::string family : {"Mod", "Opt"}) {
        for (const std::string& label : labels) {
            for (double sign : {-1.0, 1.0}) {
                const TableOneRow& r = find_row(family, label, sign);
                if (r.n_atoms > opt.max_atoms) continue;
                const ArrayGeometry g = build_geometry(r.n_atoms);
                const std::string file = "fig4_" + family + "_" + label + "_" + sign_tag(sign) + ".csv";
                std::ofstream csv(dir / file);
                csv << "T_uK,interaction_deviation,mean_F,std_error,n_rejected\n" << std::setprecision(12);
                double clean = kNaN, hot = kNaN;
                for (double t : temperatures) {
                    DisorderConfig dc;
                    dc.temperature_uk = t;
                    dc.n_realizations = t == 0 ? 1 : opt.realizations;
                    dc.master_seed = opt.seed;
                    const DisorderResult d = ensemble_average_transfer(g, r.drive, noise, dc, settings, o.threads);
                    csv << t << ',' << d.interaction_deviation << ',' << d.mean_fidelity << ',' << d.std_error << ','
                        << d.n_rejected << '\n';
                    if (t == 0) clean = d.mean_fidelity;
                    if (t == 50) hot = d.mean_fidelity;
                }
                const std::string name = row_name(family, label, r.n_atoms, sign);
                summary["panels"][name] = {{"csv", file}, {"F_clean", clean}, {"F_50uK", hot}};
                std::cerr << "  " << name << ": " << clean << " -> " << hot << '\n';
                if (family == "Opt" && label == "II") (sign > 0 ? reduction_pos : reduction_neg) = clean - hot;
            }
        }
    }
    rep.add({"Opt II N=4 positive", "reduction at 50 uK", reduction_pos, 0.0035, 0.0165, ""});
    rep.add({"Opt II N=4", "negative minus positive reduction > 0", reduction_neg - reduction_pos > 0 ? 1.0 : 0.0, 1.0,
             0.0, ""});

    // Panel (e): J_W against V_NN for Omega0/Omega = 5/10 at both detuning signs.
    std::ofstream csv(dir / "fig4e.csv");
    csv << "V_NN,J_W_negative,J_W_positive\n" << std::setprecision(12);
    const ArrayGeometry g4 = build_geometry(4);
    const double v0 = g4.nominal_nn(), vp0 = g4.nominal_nnn();
    double span_neg = 0, span_pos = 0;
    auto jw = [&](double v, double delta) {
        return reduce_to_wc(wc_couplings({5, 10, delta, delta}, v, vp0 * v / v0, 4), 4).j_w;
    };
    for (int i = 0; i <= 100; ++i) {
        const double v = v0 * (0.8 + 0.4 * i / 100);
        csv << v << ',' << jw(v, -200) << ',' << jw(v, 200) << '\n';
    }
    span_neg = std::abs(jw(1.1 * v0, -200) - jw(0.9 * v0, -200)) / std::abs(jw(v0, -200));
    span_pos = std::abs(jw(1.1 * v0, 200) - jw(0.9 * v0, 200)) / std::abs(jw(v0, 200));
    summary["soft_core_ratio"] = span_pos / span_neg;
    rep.add({"J_W(V_NN +-10%)", "positive/negative relative variation < 0.25", span_pos / span_neg < 0.25 ? 1.0 : 0.0,
             1.0, 0.0, ""});

    const int code = rep.finish(summary, "fig4");
    write_json(dir / "summary.json", summary);
    return code;
}

int reproduce_fig5(const ReproduceOptions& opt, const RunOptions& o) {
    const auto dir = prepare_dir(o.out_dir);
    NoiseParams noise;
    noise.dephasing = kTableDephasing;
    noise.decay = kLongTimeDecay;
    TransferSettings settings;
    settings.n_max = opt.n_max;
    DisorderConfig dc;
    dc.n_realizations = opt.realizations;
    dc.master_seed = opt.seed;
    Report rep;
    Json summary = header_for("fig5", o);
    std::map<std::string, LongTimeResult> results;
    for (const std::string label : {"II", "III", "IV"}) {
        for (double sign : {-1.0, 1.0}) {
            const TableOneRow& r = find_row("Opt", label, sign);
            if (r.n_atoms > opt.max_atoms) continue;
            const LongTimeResult lt =
                long_time_dynamics(build_geometry(r.n_atoms), r.drive, noise, dc, 4, settings, 200, o.threads);
            const std::string file = "fig5_Opt_" + label + "_" + sign_tag(sign) + ".csv";
            std::ofstream csv(dir / file);
            write_trace_csv(csv, lt.mean_trace);
            const std::string name = row_name("Opt", label, r.n_atoms, sign);
            Json marks = Json::array();
            for (std::size_t k = 0; k < lt.marks.size(); ++k)
                marks.push_back({{"k", k + 1}, {"target", lt.target_at_marks[k]}, {"source", lt.source_at_marks[k]}});
            summary["panels"][name] = {{"csv", file}, {"T_g_us", lt.clean_transfer_time}, {"marks", marks}};
            std::cerr << "  " << name << " done\n";
            results[label + sign_tag(sign)] = lt;
        }
    }
    if (results.count("IIpositive") && results.count("IInegative")) {
        const double gap = results["IIpositive"].target_at_marks[2] - results["IInegative"].target_at_marks[2];
        rep.add({"Opt II N=4", "second-arrival target gain (positive - negative) > 0.03", gap > 0.03 ? 1.0 : 0.0, 1.0,
                 0.0, ""});
        summary["second_arrival_gap"] = gap;
    }
    if (results.count("IVpositive"))
        rep.add({"Opt IV N=8 positive", "source population at 4 T_g", results["IVpositive"].source_at_marks[3], 0.5302,
                 0.05, ""});
    if (results.count("IVnegative"))
        rep.add({"Opt IV N=8 negative", "source population at 4 T_g", results["IVnegative"].source_at_marks[3], 0.3651,
                 0.05, ""});
    const int code = rep.finish(summary, "fig5");
    write_json(dir / "summary.json", summary);
    return code;
}

}  // namespace

int cmd_reproduce(const std::string& target, const ReproduceOptions& r, const RunOptions& o) {
    if (target == "table1") return reproduce_table1(r, o);
    if (target == "table2") return reproduce_table2(r, o);
    if (target == "fig1b") return reproduce_fig1b(o);
    if (target == "fig4") return reproduce_fig4(r, o);
    if (target == "fig5") return reproduce_fig5(r, o);
    throw DomainError("unknown reproduction target '" + target + "'");
}

}  // namespace rydtransfer::cli
