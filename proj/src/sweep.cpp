// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "bellsim/config.hpp"

namespace bellsim {

double scaled_time_unit(const ModelSpec& spec)
{
    if (spec.kappa <= 0.0 || spec.gamma0 <= 0.0) {
        throw DimensionError("scaled_time_unit: needs kappa > 0 and gamma0 > 0");
    }
    return spec.gamma0 / (spec.kappa * spec.kappa);
}

namespace {

void add_model_metadata(ResultTable& table, const ModelSpec& spec)
{
    for (const auto& [k, v] : model_to_config(spec)) {
        table.set_meta(k, v);
    }
    table.set_meta("r", format_double(spec.r()));
}

} // namespace

TransientResult run_transient(const ModelSpec& spec, const TransientOptions& opts,
                              const QuadratureKernel& kernel)
{
    if (opts.nt < 2 || opts.tmax_scaled <= 0.0) {
        throw DimensionError("run_transient: needs nt >= 2 and tmax > 0");
    }
    const TwoModeModel model = two_mode_effective_model(spec);
    const Liouvillian L(model.hamiltonian, model.collapses);
    const DensityMatrix rho0 = initial_two_mode_state(spec);
    const double unit = scaled_time_unit(spec);
    const AngleSet angles = parameterized_angles(opts.varphi);

    std::vector<double> taus = linspace(opts.tmax_scaled / (opts.nt - 1.0),
                                        opts.tmax_scaled, opts.nt - 1);
    std::vector<double> traw(taus.size());
    for (size_t i = 0; i < taus.size(); ++i) {
        traw[i] = taus[i] * unit;
    }

    const size_t n = taus.size() + 1; // include t = 0
    std::vector<double> col_t(n), col_tau(n), ch(n), chsh(n), chn(n), chshn(n);
    std::vector<double> n1(n), n2(n), vard(n), en(n);

    const auto record = [&](size_t i, const DensityMatrix& rho) {
        const BellResult b = bell_result(rho, angles, kernel);
        ch[i] = b.b_ch;
        chsh[i] = b.b_chsh;
        chn[i] = b.b_ch;
        chshn[i] = 0.5 * b.b_chsh;
        n1[i] = std::real(expectation(rho, number_op(rho.space, 0)));
        n2[i] = std::real(expectation(rho, number_op(rho.space, 1)));
        vard[i] = two_mode_diff_variance(rho);
        en[i] = logarithmic_negativity(rho);
    };

    col_t[0] = 0.0;
    col_tau[0] = 0.0;
    record(0, rho0);
    evolve_observe(L, rho0, traw,
                   [&](int i, double t, const DensityMatrix& rho) {
                       col_t[i + 1] = t;
                       col_tau[i + 1] = taus[i];
                       record(i + 1, rho);
                   },
                   opts.evolve);

    TransientResult res;
    res.table.add_column("t", col_t);
    res.table.add_column("t_scaled", col_tau);
    res.table.add_column("b_ch", ch);
    res.table.add_column("b_chsh", chsh);
    res.table.add_column("b_ch_norm", chn);
    res.table.add_column("b_chsh_norm", chshn);
    res.table.add_column("n1", n1);
    res.table.add_column("n2", n2);
    res.table.add_column("var_xdiff", vard);
    res.table.add_column("log_negativity", en);
    add_model_metadata(res.table, spec);
    res.table.set_meta("varphi", format_double(opts.varphi));

    for (size_t i = 0; i < n; ++i) {
        if (chshn[i] > 1.0) {
            if (!res.violated) {
                res.violated = true;
                res.t_on_scaled = col_tau[i];
            }
            res.t_off_scaled = col_tau[i];
        } else if (res.violated) {
            break; // first contiguous window only
        }
    }
    if (res.violated) {
        res.table.set_meta("violation_window_on", format_double(res.t_on_scaled));
        res.table.set_meta("violation_window_off", format_double(res.t_off_scaled));
    }
    return res;
}

SteadyReport run_steady(const ModelSpec& spec, const SteadyOptions& opts,
                        const QuadratureKernel& kernel)
{
    const TwoModeModel model = two_mode_effective_model(spec);
    const Liouvillian L(model.hamiltonian, model.collapses);
    const DensityMatrix rho0 = initial_two_mode_state(spec);
    const DensityMatrix ss = steady_state(L, rho0, opts.strategy);
    const AngleSet angles = parameterized_angles(opts.varphi);
    const BellResult bell = bell_result(ss, angles, kernel);

    SteadyReport rep;
    rep.summary.add_column("n1", {std::real(expectation(ss, number_op(ss.space, 0)))});
    rep.summary.add_column("n2", {std::real(expectation(ss, number_op(ss.space, 1)))});
    rep.summary.add_column("var_xdiff", {two_mode_diff_variance(ss)});
    rep.summary.add_column("var_x1", {quadrature_variance(ss, 0, 0.0)});
    rep.summary.add_column("log_negativity", {logarithmic_negativity(ss)});
    rep.summary.add_column("b_ch_norm", {bell.b_ch});
    rep.summary.add_column("b_chsh_norm", {0.5 * bell.b_chsh});
    rep.summary.add_column("residual", {L.residual_max(ss.mat)});
    add_model_metadata(rep.summary, spec);
    rep.summary.set_meta("varphi", format_double(opts.varphi));
    rep.summary.set_meta("strategy", opts.strategy == SteadyStateStrategy::NullSpace
                                         ? "null-space"
                                         : "long-time");

    const auto p1 = fock_distribution(ss, 0);
    const auto p2 = fock_distribution(ss, 1);
    std::vector<double> ns(p1.size());
    for (size_t i = 0; i < ns.size(); ++i) {
        ns[i] = static_cast<double>(i);
    }
    rep.fock.add_column("n", ns);
    rep.fock.add_column("p_mode1", p1);
    rep.fock.add_column("p_mode2", p2);
    add_model_metadata(rep.fock, spec);

    const auto xs = linspace(opts.wigner_min, opts.wigner_max, opts.wigner_n);
    const WignerGrid w = wigner_single_mode(ss, 0, xs, xs);
    std::vector<double> wx, wp, wv;
    wx.reserve(xs.size() * xs.size());
    for (size_t i = 0; i < w.xs.size(); ++i) {
        for (size_t j = 0; j < w.ps.size(); ++j) {
            wx.push_back(w.xs[i]);
            wp.push_back(w.ps[j]);
            wv.push_back(w.values(i, j));
        }
    }
    rep.wigner.add_column("x", wx);
    rep.wigner.add_column("p", wp);
    rep.wigner.add_column("W", wv);
    add_model_metadata(rep.wigner, spec);

    const auto qs = linspace(opts.pdf_min, opts.pdf_max, opts.pdf_n);
    std::vector<double> px, py, pv;
    px.reserve(qs.size() * qs.size());
    for (double X1 : qs) {
        for (double X2 : qs) {
            px.push_back(X1);
            py.push_back(X2);
            pv.push_back(joint_pdf(ss, 0.0, 0.0, X1, X2));
        }
    }
    rep.pdf.add_column("X1", px);
    rep.pdf.add_column("X2", py);
    rep.pdf.add_column("p", pv);
    add_model_metadata(rep.pdf, spec);
    return rep;
}

namespace {

bool is_model_axis(const std::string& name)
{
    return name == "kappa" || name == "E" || name == "gamma0" || name == "N_thermal";
}

void check_axis(const SweepAxis& axis)
{
    static const std::vector<std::string> allowed = {"t",      "kappa",  "E",
                                                     "gamma0", "varphi", "N_thermal"};
    if (std::find(allowed.begin(), allowed.end(), axis.name) == allowed.end()) {
        throw ConfigError("sweep: axis '" + axis.name
                          + "' not in {t, kappa, E, gamma0, varphi, N_thermal}");
    }
    if (axis.grid.empty()) {
        throw ConfigError("sweep: axis '" + axis.name + "' has an empty grid");
    }
    for (size_t i = 1; i < axis.grid.size(); ++i) {
        if (axis.grid[i] <= axis.grid[i - 1]) {
            throw ConfigError("sweep: axis '" + axis.name + "' grid must be increasing");
        }
    }
}

ModelSpec apply_axis(ModelSpec spec, const std::string& name, double value)
{
    if (name == "kappa") {
        spec.kappa = value;
    } else if (name == "E") {
        spec.E = Complex(value, spec.E.imag());
    } else if (name == "gamma0") {
        spec.gamma0 = value;
    } else if (name == "N_thermal") {
        spec.N1 = value;
        spec.N2 = value;
    }
    return spec;
}

} // namespace

SweepResult run_sweep(const SweepPlan& plan)
{
    check_axis(plan.axis1);
    check_axis(plan.axis2);
    if (plan.axis1.name == plan.axis2.name) {
        throw ConfigError("sweep: the two axes must differ");
    }
    const long n1 = static_cast<long>(plan.axis1.grid.size());
    const long n2 = static_cast<long>(plan.axis2.grid.size());
    if (n1 * n2 > plan.max_points) {
        throw BudgetError("sweep: " + std::to_string(n1 * n2)
                          + " grid points exceed the budget of "
                          + std::to_string(plan.max_points));
    }

    const int dim_max = *std::max_element(plan.model.dims.begin(), plan.model.dims.end());
    const QuadratureKernel kernel(dim_max);

    // Group grid cells by model-parameter combination; each combination is
    // one evolution job covering all its (t, varphi) cells.
    struct Job {
        ModelSpec spec;
        std::vector<std::pair<long, long>> cells; // (i1, i2)
    };
    std::vector<Job> jobs;
    const bool ax1_model = is_model_axis(plan.axis1.name);
    const bool ax2_model = is_model_axis(plan.axis2.name);
    if (ax1_model && ax2_model) {
        for (long i = 0; i < n1; ++i) {
            for (long j = 0; j < n2; ++j) {
                ModelSpec s = apply_axis(plan.model, plan.axis1.name, plan.axis1.grid[i]);
                s = apply_axis(s, plan.axis2.name, plan.axis2.grid[j]);
                jobs.push_back({s, {{i, j}}});
            }
        }
    } else if (ax1_model || ax2_model) {
        const SweepAxis& ma = ax1_model ? plan.axis1 : plan.axis2;
        const long nm = ax1_model ? n1 : n2;
        const long no = ax1_model ? n2 : n1;
        for (long i = 0; i < nm; ++i) {
            Job job{apply_axis(plan.model, ma.name, ma.grid[i]), {}};
            for (long j = 0; j < no; ++j) {
                job.cells.emplace_back(ax1_model ? i : j, ax1_model ? j : i);
            }
            jobs.push_back(std::move(job));
        }
    } else {
        Job job{plan.model, {}};
        for (long i = 0; i < n1; ++i) {
            for (long j = 0; j < n2; ++j) {
                job.cells.emplace_back(i, j);
            }
        }
        jobs.push_back(std::move(job));
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    RealMatrix chsh = RealMatrix::Constant(n1, n2, nan);
    RealMatrix ch = RealMatrix::Constant(n1, n2, nan);
    std::atomic<int> missing{0};
    std::atomic<size_t> next{0};

    const auto axis_value = [&](const SweepAxis& ax, long idx) { return ax.grid[idx]; };

    const auto run_job = [&](const Job& job) {
        try {
            const double unit = scaled_time_unit(job.spec);
            // collect the distinct sample times of this job (scaled units)
            std::vector<double> taus;
            if (plan.axis1.name == "t") {
                taus = plan.axis1.grid;
            } else if (plan.axis2.name == "t") {
                taus = plan.axis2.grid;
            } else {
                taus = {plan.tmax_scaled};
            }
            std::vector<double> traw;
            std::vector<size_t> tau_of_sample;
            DensityMatrix rho0 = initial_two_mode_state(job.spec);
            std::vector<DensityMatrix> states;
            states.reserve(taus.size());
            bool has_zero = false;
            for (size_t k = 0; k < taus.size(); ++k) {
                if (taus[k] * unit <= 0.0) {
                    has_zero = true;
                    continue;
                }
                traw.push_back(taus[k] * unit);
            }
            const TwoModeModel model = two_mode_effective_model(job.spec);
            const Liouvillian L(model.hamiltonian, model.collapses);
            std::vector<DensityMatrix> sampled;
            sampled.reserve(traw.size());
            evolve_observe(L, rho0, traw,
                           [&](int, double, const DensityMatrix& rho) {
                               sampled.push_back(rho);
                           },
                           plan.evolve);
            // map back: taus index -> state
            std::vector<const DensityMatrix*> state_of_tau(taus.size(), nullptr);
            size_t si = 0;
            for (size_t k = 0; k < taus.size(); ++k) {
                if (taus[k] * unit <= 0.0) {
                    state_of_tau[k] = &rho0;
                } else {
                    state_of_tau[k] = &sampled[si++];
                }
            }
            (void)has_zero;

            for (const auto& [i, j] : job.cells) {
                double varphi = plan.varphi;
                size_t tau_idx = 0;
                if (plan.axis1.name == "t") {
                    tau_idx = static_cast<size_t>(i);
                } else if (plan.axis2.name == "t") {
                    tau_idx = static_cast<size_t>(j);
                }
                if (plan.axis1.name == "varphi") {
                    varphi = axis_value(plan.axis1, i);
                } else if (plan.axis2.name == "varphi") {
                    varphi = axis_value(plan.axis2, j);
                }
                const BellResult b =
                    bell_result(*state_of_tau[tau_idx], parameterized_angles(varphi), kernel);
                ch(i, j) = b.b_ch;
                chsh(i, j) = 0.5 * b.b_chsh;
            }
        } catch (const SimError&) {
            // record-and-continue policy: cells of this job stay NaN
            missing += static_cast<int>(job.cells.size());
        }
    };

    int nthreads = plan.threads > 0
                       ? plan.threads
                       : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(jobs.size())));
    if (nthreads == 1) {
        for (const auto& job : jobs) {
            run_job(job);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int w = 0; w < nthreads; ++w) {
            pool.emplace_back([&]() {
                for (size_t idx = next.fetch_add(1); idx < jobs.size();
                     idx = next.fetch_add(1)) {
                    run_job(jobs[idx]);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    SweepResult res;
    res.chsh_norm = chsh;
    res.ch_norm = ch;
    res.missing = missing.load();
    std::vector<double> c1, c2v, cch, cchsh;
    c1.reserve(n1 * n2);
    for (long i = 0; i < n1; ++i) {
        for (long j = 0; j < n2; ++j) {
            c1.push_back(plan.axis1.grid[i]);
            c2v.push_back(plan.axis2.grid[j]);
            cch.push_back(ch(i, j));
            cchsh.push_back(chsh(i, j));
            if (!std::isnan(ch(i, j))
                && (ch(i, j) > 1.0) != (chsh(i, j) > 1.0)) {
                res.regions_coincide = false;
            }
        }
    }
    res.table.add_column(plan.axis1.name, c1);
    res.table.add_column(plan.axis2.name, c2v);
    res.table.add_column("b_ch_norm", cch);
    res.table.add_column("b_chsh_norm", cchsh);
    add_model_metadata(res.table, plan.model);
    res.table.set_meta("axis1", plan.axis1.name);
    res.table.set_meta("axis2", plan.axis2.name);
    res.table.set_meta("varphi", format_double(plan.varphi));
    res.table.set_meta("tmax_scaled", format_double(plan.tmax_scaled));
    res.table.set_meta("missing", std::to_string(res.missing));
    res.table.set_meta("ch_chsh_regions_coincide", res.regions_coincide ? "true" : "false");
    return res;
}

double optimal_r_grid_argmax(double r_lo, double r_hi, int n, const QuadratureKernel& kernel)
{
    if (n < 2 || r_hi <= r_lo || r_lo <= 0.0) {
        throw DimensionError("optimal_r_grid_argmax: bad grid");
    }
    const AngleSet angles = parameterized_angles(M_PI / 4.0);
    // truncation comfortably above the kernel needs for r <= 2
    const int dim = std::min(kernel.max_n() + 1, 20);
    double best_r = r_lo;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (n - 1.0);
        const DensityMatrix rho = analytic_steady_state(r, {dim, dim});
        const double b = bell_chsh(rho, angles, kernel);
        if (b > best) {
            best = b;
            best_r = r;
        }
    }
    return best_r;
}

EliminationReport run_elimination_check(const ModelSpec& spec,
                                        const EliminationOptions& opts)
{
    if (spec.dims.size() != 3) {
        throw DimensionError("run_elimination_check: spec.dims must be "
                             "(pump, signal, idler)");
    }
    const double unit = scaled_time_unit(spec);
    const std::vector<double> taus =
        linspace(opts.tmax_scaled / opts.nt, opts.tmax_scaled, opts.nt);
    std::vector<double> traw(taus.size());
    for (size_t i = 0; i < taus.size(); ++i) {
        traw[i] = taus[i] * unit;
    }

    // full three-mode run, pump traced out at each sample
    const OperatorMatrix h3 = three_mode_hamiltonian(spec);
    const Liouvillian L3(h3, three_mode_collapses(spec));
    const CompositeSpace space3 = spec.three_mode_space();
    const DensityMatrix rho3 =
        thermal_state(space3, {0.0, spec.N1, spec.N2});
    std::vector<double> n1_3(taus.size()), vd_3(taus.size()), vs_3(taus.size());
    evolve_observe(L3, rho3, traw,
                   [&](int i, double, const DensityMatrix& rho) {
                       const DensityMatrix red = partial_trace(rho, {1, 2});
                       n1_3[i] = std::real(expectation(red, number_op(red.space, 0)));
                       vd_3[i] = two_mode_diff_variance(red);
                       vs_3[i] = two_mode_sum_variance(red);
                   },
                   opts.evolve);

    ModelSpec spec2 = spec;
    spec2.dims = {spec.dims[1], spec.dims[2]};
    const TwoModeModel model = two_mode_effective_model(spec2);
    const Liouvillian L2(model.hamiltonian, model.collapses);
    std::vector<double> n1_2(taus.size()), vd_2(taus.size()), vs_2(taus.size());
    evolve_observe(L2, initial_two_mode_state(spec2), traw,
                   [&](int i, double, const DensityMatrix& rho) {
                       n1_2[i] = std::real(expectation(rho, number_op(rho.space, 0)));
                       vd_2[i] = two_mode_diff_variance(rho);
                       vs_2[i] = two_mode_sum_variance(rho);
                   },
                   opts.evolve);

    EliminationReport rep;
    rep.curves.add_column("t_scaled", taus);
    rep.curves.add_column("n1_3mode", n1_3);
    rep.curves.add_column("n1_2mode", n1_2);
    rep.curves.add_column("var_xdiff_3mode", vd_3);
    rep.curves.add_column("var_xdiff_2mode", vd_2);
    rep.curves.add_column("var_xsum_3mode", vs_3);
    rep.curves.add_column("var_xsum_2mode", vs_2);
    add_model_metadata(rep.curves, spec);

    // deviation metric: max_t |a-b| / max_t max(|a|,|b|)
    const auto deviation = [](const std::vector<double>& a, const std::vector<double>& b) {
        double dmax = 0.0, scale = 0.0;
        for (size_t i = 0; i < a.size(); ++i) {
            dmax = std::max(dmax, std::abs(a[i] - b[i]));
            scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
        }
        return scale > 0.0 ? dmax / scale : 0.0;
    };
    rep.dev_n1 = deviation(n1_3, n1_2);
    rep.dev_var = deviation(vd_3, vd_2);
    rep.pass = rep.dev_n1 <= opts.bound && rep.dev_var <= opts.bound;
    rep.curves.set_meta("dev_n1", format_double(rep.dev_n1));
    rep.curves.set_meta("dev_var_xdiff", format_double(rep.dev_var));
    rep.curves.set_meta("bound", format_double(opts.bound));
    rep.curves.set_meta("pass", rep.pass ? "true" : "false");
    return rep;
}

} // namespace bellsim
