#include "qig/suites.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "qig/group_actions.hpp"
#include "qig/petz.hpp"

namespace qig {

namespace {

enum SuiteId : std::uint64_t {
    kGradient = 1,
    kCommutators = 2,
    kMetric = 3,
    kKappaScan = 4,
    kActions = 5,
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

double relres(const HermitianMatrix& got, const HermitianMatrix& want) {
    return (got - want).frobenius_norm() / (1.0 + want.frobenius_norm());
}

double relres(double got, double want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
}

std::string format_kappa(double k) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", k);
    return buf;
}

// Accumulates one cell of a suite report.
class Cell {
public:
    Cell(SuiteReport& rep, const SuiteConfig& cfg, std::uint64_t suite_id,
         std::string check, std::string spec, int n)
        : rep_(rep) {
        cell_.suite = rep.suite;
        cell_.check = std::move(check);
        cell_.spec = std::move(spec);
        cell_.n = n;
        cell_.trials = 0;
        cell_.seed = derive_seed(cfg.seed, suite_id, std::uint64_t(n),
                                 fnv1a(cell_.check), fnv1a(cell_.spec));
    }

    Cell& with_kappa(double k) {
        cell_.kappa = k;
        cell_.has_kappa = true;
        cell_.seed = derive_seed(cell_.seed, bits(k));
        return *this;
    }

    std::uint64_t trial_seed(int trial, std::uint64_t slot) const {
        return derive_seed(cell_.seed, std::uint64_t(trial), slot);
    }

    void trial_done() { ++cell_.trials; }
    void skip() { ++cell_.skips; }

    void record(double residual) {
        if (residual > cell_.max_abs_residual)
            cell_.max_abs_residual = residual;
    }

    // records the residual and flags it when it exceeds the threshold
    void check_residual(double residual, double threshold, int trial) {
        record(residual);
        if (residual > threshold)
            cell_.violations.push_back({cell_.check, trial, residual, threshold});
    }

    void flag(const std::string& what, int trial, double value, double threshold) {
        cell_.violations.push_back({what, trial, value, threshold});
    }

    void extra(const std::string& key, double value) { cell_.extra.emplace_back(key, value); }

    ~Cell() { rep_.cells.push_back(cell_); }

private:
    SuiteReport& rep_;
    CellResult cell_;
};

const std::vector<std::string>& default_metric_labels() {
    static const std::vector<std::string> labels{"bh", "wy", "bkm", "gl:0.3", "gl:0.8"};
    return labels;
}

std::vector<std::string> metric_labels(const SuiteConfig& cfg) {
    return cfg.specs.empty() ? default_metric_labels() : cfg.specs;
}

using StateField = std::function<HermitianMatrix(const DensityState&)>;
using ConeField = std::function<HermitianMatrix(const PositiveOperator&)>;

// [v, w] = Dw[v] - Dv[w] by central differences through the field arguments
HermitianMatrix bracket_state(const StateField& v, const StateField& w, const DensityState& rho,
                              double h) {
    HermitianMatrix vr = v(rho);
    HermitianMatrix wr = w(rho);
    DensityState vp(rho.hermitian() + h * vr);
    DensityState vm(rho.hermitian() + (-h) * vr);
    DensityState wp(rho.hermitian() + h * wr);
    DensityState wm(rho.hermitian() + (-h) * wr);
    HermitianMatrix dw = (0.5 / h) * (w(vp) - w(vm));
    HermitianMatrix dv = (0.5 / h) * (v(wp) - v(wm));
    return dw - dv;
}

HermitianMatrix bracket_cone(const ConeField& v, const ConeField& w, const PositiveOperator& om,
                             double h) {
    HermitianMatrix vr = v(om);
    HermitianMatrix wr = w(om);
    PositiveOperator vp(om.hermitian() + h * vr);
    PositiveOperator vm(om.hermitian() + (-h) * vr);
    PositiveOperator wp(om.hermitian() + h * wr);
    PositiveOperator wm(om.hermitian() + (-h) * wr);
    HermitianMatrix dw = (0.5 / h) * (w(vp) - w(vm));
    HermitianMatrix dv = (0.5 / h) * (v(wp) - v(wm));
    return dw - dv;
}

Observable unit_observable(int n, std::uint64_t seed) {
    Observable a = random_observable(n, seed);
    return (1.0 / std::max(a.frobenius_norm(), 1e-12)) * a;
}

ComplexMatrix random_gl(int n, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix g = random_ginibre(n, rng);
    g *= cplx(0.5 / std::sqrt(double(n)));
    return expm_general(g);
}

HermitianMatrix diagonal_in_basis(const SpectralDecomposition& s, const std::vector<double>& d) {
    const int n = s.dim();
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += s.u(i, k) * d[std::size_t(k)] * std::conj(s.u(j, k));
            m(i, j) = acc;
        }
    ComplexMatrix sym(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return HermitianMatrix(sym);
}

} // namespace

int SuiteReport::total_violations() const {
    int t = 0;
    for (const auto& c : cells)
        t += int(c.violations.size());
    return t;
}

int total_violations(const std::vector<SuiteReport>& reports) {
    int t = 0;
    for (const auto& r : reports)
        t += r.total_violations();
    return t;
}

SuiteReport suite_gradient(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "gradient";
    for (int n : cfg.dims) {
        for (double kappa : cfg.kappas) {
            DeformationParam dp(kappa);
            {
                MonotoneFunctionSpec f = MonotoneFunctionSpec::power_interpolation(kappa);
                MetricSpec m{f, kappa};
                Cell cell(rep, cfg, kGradient, "gradient-vs-field", f.label, n);
                cell.with_kappa(kappa);
                for (int t = 0; t < cfg.trials; ++t) {
                    DensityState rho = random_density(n, cell.trial_seed(t, 1));
                    Observable a = random_observable(n, cell.trial_seed(t, 2));
                    TangentVector grad = gradient_field(m, a, rho);
                    TangentVector z = fund_Z(a, rho, dp);
                    cell.check_residual(relres(grad.hermitian(), z.hermitian()),
                                        cfg.tol.analytic_residual, t);
                    LieDirection dir{a, HermitianMatrix::zero(n)};
                    TangentVector flow = flow_fundamental_numeric(
                        ActionSpec{ActionKind::BetaDeformed, kappa}, dir, rho, cfg.tol.fd_step);
                    cell.check_residual(relres(flow.hermitian(), z.hermitian()),
                                        cfg.tol.numeric_residual, t);
                    cell.trial_done();
                }
            }
            {
                MonotoneFunctionSpec f = MonotoneFunctionSpec::log_mean();
                MetricSpec m{f, kappa};
                Cell cell(rep, cfg, kGradient, "gradient-vs-field", f.label, n);
                cell.with_kappa(kappa);
                for (int t = 0; t < cfg.trials; ++t) {
                    DensityState rho = random_density(n, cell.trial_seed(t, 3));
                    Observable a = random_observable(n, cell.trial_seed(t, 4));
                    TangentVector grad = gradient_field(m, a, rho);
                    TangentVector w = fund_W_deformed(a, rho, dp);
                    cell.check_residual(relres(grad.hermitian(), w.hermitian()),
                                        cfg.tol.analytic_residual, t);
                    LieDirection dir{a, HermitianMatrix::zero(n)};
                    TangentVector flow = flow_fundamental_numeric(
                        ActionSpec{ActionKind::GammaDeformed, kappa}, dir, rho, cfg.tol.fd_step);
                    cell.check_residual(relres(flow.hermitian(), w.hermitian()),
                                        cfg.tol.numeric_residual, t);
                    cell.trial_done();
                }
            }
        }
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SuiteReport suite_commutators(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "commutators";
    const double h = cfg.tol.bracket_step_outer;
    for (int n : cfg.dims) {
        {
            Cell cell(rep, cfg, kCommutators, "unitary-bracket", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                Observable b = unit_observable(n, cell.trial_seed(t, 2));
                Observable c = unit_observable(n, cell.trial_seed(t, 3));
                StateField xb = [&](const DensityState& s) { return fund_X(b, s).hermitian(); };
                StateField xc = [&](const DensityState& s) { return fund_X(c, s).hermitian(); };
                try {
                    HermitianMatrix lhs = bracket_state(xb, xc, rho, h);
                    HermitianMatrix rhs = fund_X(comm(b, c), rho).hermitian();
                    cell.check_residual(relres(lhs, rhs), cfg.tol.bracket_residual, t);
                    cell.trial_done();
                } catch (const ConditioningError&) {
                    cell.skip();
                }
            }
        }
        {
            Cell cell(rep, cfg, kCommutators, "translation-bracket", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                Rng rng(cell.trial_seed(t, 1));
                double scale = rng.uniform(0.5, 2.0);
                DensityState rho = random_density(n, cell.trial_seed(t, 2));
                PositiveOperator om(scale * rho.hermitian());
                Observable a = unit_observable(n, cell.trial_seed(t, 3));
                Observable b = unit_observable(n, cell.trial_seed(t, 4));
                ConeField ya = [&](const PositiveOperator& s) { return fund_Y_hat(a, s).hermitian(); };
                ConeField yb = [&](const PositiveOperator& s) { return fund_Y_hat(b, s).hermitian(); };
                try {
                    HermitianMatrix lhs = bracket_cone(ya, yb, om, h);
                    HermitianMatrix rhs = fund_X_hat(comm(b, a), om).hermitian();
                    cell.check_residual(relres(lhs, rhs), cfg.tol.bracket_residual, t);
                    cell.trial_done();
                } catch (const ConditioningError&) {
                    cell.skip();
                }
            }
        }
        for (const auto& label : metric_labels(cfg)) {
            MetricSpec m{MonotoneFunctionSpec::parse(label), 1.0};
            Cell cell(rep, cfg, kCommutators, "gradient-bracket", label, n);
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                Observable b = unit_observable(n, cell.trial_seed(t, 2));
                Observable c = unit_observable(n, cell.trial_seed(t, 3));
                StateField xb = [&](const DensityState& s) { return fund_X(b, s).hermitian(); };
                StateField gc = [&](const DensityState& s) {
                    return gradient_field(m, c, s).hermitian();
                };
                try {
                    HermitianMatrix lhs = bracket_state(xb, gc, rho, h);
                    HermitianMatrix rhs = gradient_field(m, comm(b, c), rho).hermitian();
                    cell.check_residual(relres(lhs, rhs), cfg.tol.bracket_residual, t);
                    cell.trial_done();
                } catch (const ConditioningError&) {
                    cell.skip();
                }
            }
        }
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SuiteReport suite_metric(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "metric";
    const auto labels = metric_labels(cfg);
    for (int n : cfg.dims) {
        for (const auto& label : labels) {
            MonotoneFunctionSpec f = MonotoneFunctionSpec::parse(label);
            MetricSpec m{f, 1.0};
            {
                Cell cell(rep, cfg, kMetric, "defining-property", label, n);
                for (int t = 0; t < cfg.trials; ++t) {
                    DensityState rho = random_density(n, cell.trial_seed(t, 1));
                    Observable a = random_observable(n, cell.trial_seed(t, 2));
                    TangentVector v = random_tangent(rho, cell.trial_seed(t, 3));
                    double want = expectation(a, v.hermitian());
                    double got = metric_eval(m, rho, gradient_field(m, a, rho), v);
                    cell.check_residual(relres(got, want), cfg.tol.analytic_residual, t);
                    cell.trial_done();
                }
            }
            {
                Cell cell(rep, cfg, kMetric, "unitary-invariance", label, n);
                for (int t = 0; t < cfg.trials; ++t) {
                    DensityState rho = random_density(n, cell.trial_seed(t, 1));
                    TangentVector v = random_tangent(rho, cell.trial_seed(t, 2));
                    TangentVector w = random_tangent(rho, cell.trial_seed(t, 3));
                    ComplexMatrix u = random_unitary(n, cell.trial_seed(t, 4));
                    double before = metric_eval(m, rho, v, w);
                    DensityState moved = act_alpha(u, rho);
                    TangentVector mv(conjugate_by(u, v.hermitian()), TangentVector::Kind::StateSpace);
                    TangentVector mw(conjugate_by(u, w.hermitian()), TangentVector::Kind::StateSpace);
                    double after = metric_eval(m, moved, mv, mw);
                    cell.check_residual(relres(after, before), cfg.tol.invariance_residual, t);
                    cell.trial_done();
                }
            }
            {
                Cell cell(rep, cfg, kMetric, "classical-reduction", label, n);
                for (int t = 0; t < cfg.trials; ++t) {
                    DensityState rho = random_density(n, cell.trial_seed(t, 1));
                    Rng rng(cell.trial_seed(t, 2));
                    std::vector<double> dv(static_cast<std::size_t>(n)), dw(static_cast<std::size_t>(n));
                    double mv = 0.0, mw = 0.0;
                    for (int j = 0; j < n; ++j) {
                        dv[std::size_t(j)] = rng.gaussian();
                        dw[std::size_t(j)] = rng.gaussian();
                        mv += dv[std::size_t(j)];
                        mw += dw[std::size_t(j)];
                    }
                    for (int j = 0; j < n; ++j) {
                        dv[std::size_t(j)] -= mv / n;
                        dw[std::size_t(j)] -= mw / n;
                    }
                    const auto& s = rho.spectral();
                    TangentVector v(diagonal_in_basis(s, dv), TangentVector::Kind::StateSpace);
                    TangentVector w(diagonal_in_basis(s, dw), TangentVector::Kind::StateSpace);
                    double got = metric_eval(m, rho, v, w);
                    double want = fisher_rao_eval(s.eigenvalues, dv, dw);
                    cell.check_residual(relres(got, want), cfg.tol.reduction_residual, t);
                    cell.trial_done();
                }
            }
            {
                Cell cell(rep, cfg, kMetric, "quadratic-fixed-point", label, n);
                for (int t = 0; t < cfg.trials; ++t) {
                    DensityState rho = random_density(n, cell.trial_seed(t, 1));
                    PetzSuperoperator k = build_K(immerse(rho), f);
                    HermitianMatrix got = k.apply(rho.hermitian());
                    HermitianMatrix want =
                        apply_scalar_function(rho.spectral(), [](double x) { return x * x; });
                    cell.check_residual(relres(got, want), cfg.tol.structural_residual, t);
                    cell.trial_done();
                }
            }
            const bool contractive =
                f.kind == MonotoneFunctionSpec::Kind::LogMean ||
                (f.kind == MonotoneFunctionSpec::Kind::PowerInterpolation && f.kappa <= 1.0);
            if (contractive && n <= 3) {
                Cell cell(rep, cfg, kMetric, "cptp-contraction", label, n);
                double min_margin = 0.0;
                bool first = true;
                for (int t = 0; t < cfg.trials; ++t) {
                    Channel ch = random_cptp(n, n, cell.trial_seed(t, 1));
                    DensityState rho = random_density(n, cell.trial_seed(t, 2));
                    TangentVector v = random_tangent(rho, cell.trial_seed(t, 3));
                    auto margin = cptp_contraction_margin(m, ch, rho, v);
                    if (!margin) {
                        cell.skip();
                        continue;
                    }
                    if (first || *margin < min_margin)
                        min_margin = *margin;
                    first = false;
                    if (*margin < cfg.tol.contraction_floor)
                        cell.flag("cptp-contraction", t, *margin, cfg.tol.contraction_floor);
                    cell.record(std::max(0.0, -*margin));
                    cell.trial_done();
                }
                cell.extra("min_margin", min_margin);
            }
        }
    }
    {
        // prefactor and scale laws against the log-mean family
        const int n = cfg.dims.front();
        Cell cell(rep, cfg, kMetric, "prefactor-scaling", "bkm", n);
        for (int t = 0; t < cfg.trials; ++t) {
            DensityState rho = random_density(n, cell.trial_seed(t, 1));
            Observable a = random_observable(n, cell.trial_seed(t, 2));
            MetricSpec base{MonotoneFunctionSpec::log_mean(), 1.0};
            TangentVector g1 = gradient_field(base, a, rho);
            for (double kappa : cfg.kappas) {
                MetricSpec pref{MonotoneFunctionSpec::log_mean(), kappa};
                TangentVector gp = gradient_field(pref, a, rho);
                cell.check_residual(
                    relres(gp.hermitian(), (1.0 / kappa) * g1.hermitian()),
                    cfg.tol.analytic_residual, t);
                cell.check_residual(
                    relres(gp.hermitian(), fund_W_deformed(a, rho, DeformationParam(kappa)).hermitian()),
                    cfg.tol.analytic_residual, t);
                MetricSpec scaled{MonotoneFunctionSpec::log_mean(kappa), 1.0};
                TangentVector gs = gradient_field(scaled, a, rho);
                cell.check_residual(relres(gs.hermitian(), kappa * g1.hermitian()),
                                    cfg.tol.analytic_residual, t);
            }
            cell.trial_done();
        }
    }
    {
        // beyond the monotone range contraction can fail; record findings only
        Cell cell(rep, cfg, kMetric, "contraction-probe", "gl:1.5", 2);
        MetricSpec m{MonotoneFunctionSpec::power_interpolation(1.5), 1.0};
        double min_margin = 0.0;
        bool first = true;
        int found = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            Channel ch = random_cptp(2, 2, cell.trial_seed(t, 1));
            DensityState rho = random_density(2, cell.trial_seed(t, 2));
            TangentVector v = random_tangent(rho, cell.trial_seed(t, 3));
            auto margin = cptp_contraction_margin(m, ch, rho, v);
            if (!margin) {
                cell.skip();
                continue;
            }
            if (first || *margin < min_margin)
                min_margin = *margin;
            first = false;
            if (*margin < cfg.tol.contraction_floor)
                ++found;
            cell.trial_done();
        }
        cell.extra("min_margin", min_margin);
        cell.extra("negative_margins", double(found));
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SuiteReport suite_kappa_scan(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "kappa-scan";
    for (double kappa : cfg.kappas) {
        MonotoneFunctionSpec f = MonotoneFunctionSpec::power_interpolation(kappa);
        for (int n : cfg.dims) {
            Cell cell(rep, cfg, kKappaScan, "monotonicity-witness", f.label, n);
            cell.with_kappa(kappa);
            auto witness =
                matrix_monotonicity_witness(f, n, cfg.trials, cell.trial_seed(0, 1), cfg.tol);
            for (int t = 0; t < cfg.trials; ++t)
                cell.trial_done();
            cell.extra("witness_found", witness ? 1.0 : 0.0);
            if (witness) {
                cell.extra("lambda_min", witness->lambda_min);
                cell.extra("witness_trial", double(witness->trial));
                cell.record(std::abs(witness->lambda_min));
                if (kappa <= 1.0)
                    cell.flag("witness-in-monotone-range", witness->trial, witness->lambda_min,
                              cfg.tol.witness_threshold);
            }
        }
        {
            Cell cell(rep, cfg, kKappaScan, "symmetry", f.label, 1);
            cell.with_kappa(kappa);
            SymmetryReport sym = check_symmetry(f, standard_log_grid());
            cell.check_residual(sym.max_rel_residual, cfg.tol.special_value_residual, 0);
            cell.check_residual(sym.normalization_gap, cfg.tol.special_value_residual, 0);
            cell.trial_done();
        }
        {
            Cell cell(rep, cfg, kKappaScan, "slope-at-zero", f.label, 1);
            cell.with_kappa(kappa);
            SlopeAtZero slope = derivative_at_zero_plus(f);
            cell.extra("divergent", slope.divergent ? 1.0 : 0.0);
            if (!slope.divergent)
                cell.extra("value", slope.value);
            cell.trial_done();
        }
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SuiteReport suite_actions(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "actions";
    const int pair_trials = std::min(cfg.trials, 50);
    for (int n : cfg.dims) {
        {
            Cell cell(rep, cfg, kActions, "identity-element", "", n);
            ComplexMatrix eye = ComplexMatrix::identity(n);
            GLElement gid(eye);
            CotangentElement cid(eye, HermitianMatrix::zero(n));
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                cell.check_residual(relres(act_beta(gid, rho).hermitian(), rho.hermitian()),
                                    cfg.tol.exact_identity_residual, t);
                cell.check_residual(relres(act_alpha(eye, rho).hermitian(), rho.hermitian()),
                                    cfg.tol.exact_identity_residual, t);
                cell.check_residual(
                    relres(act_gamma(cid, rho).hermitian(), rho.hermitian()),
                    cfg.tol.structural_residual, t);
                for (double kappa : cfg.kappas) {
                    DeformationParam dp(kappa);
                    cell.check_residual(
                        relres(act_beta_deformed(gid, rho, dp).hermitian(), rho.hermitian()),
                        cfg.tol.structural_residual, t);
                    cell.check_residual(
                        relres(act_gamma_deformed(cid, rho, dp).hermitian(), rho.hermitian()),
                        cfg.tol.structural_residual, t);
                }
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "composition", "", n);
            for (int t = 0; t < pair_trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                GLElement g(random_gl(n, cell.trial_seed(t, 2)));
                GLElement hh(random_gl(n, cell.trial_seed(t, 3)));
                GLElement gh = compose(g, hh);
                cell.check_residual(
                    relres(act_beta(g, act_beta(hh, rho)).hermitian(),
                           act_beta(gh, rho).hermitian()),
                    cfg.tol.structural_residual, t);
                for (double kappa : cfg.kappas) {
                    DeformationParam dp(kappa);
                    cell.check_residual(
                        relres(act_beta_deformed(g, act_beta_deformed(hh, rho, dp), dp).hermitian(),
                               act_beta_deformed(gh, rho, dp).hermitian()),
                        cfg.tol.structural_residual, t);
                }
                CotangentElement e1(random_unitary(n, cell.trial_seed(t, 4)),
                                    0.5 * random_observable(n, cell.trial_seed(t, 5)));
                CotangentElement e2(random_unitary(n, cell.trial_seed(t, 6)),
                                    0.5 * random_observable(n, cell.trial_seed(t, 7)));
                CotangentElement e12 = compose(e1, e2);
                PositiveOperator om = immerse(rho);
                cell.check_residual(
                    relres(act_gamma_hat(e1, act_gamma_hat(e2, om)).hermitian(),
                           act_gamma_hat(e12, om).hermitian()),
                    cfg.tol.structural_residual, t);
                for (double kappa : cfg.kappas) {
                    DeformationParam dp(kappa);
                    cell.check_residual(
                        relres(act_gamma_deformed(e1, act_gamma_deformed(e2, rho, dp), dp).hermitian(),
                               act_gamma_deformed(e12, rho, dp).hermitian()),
                        cfg.tol.structural_residual, t);
                }
                Observable x = random_observable(n, cell.trial_seed(t, 8));
                cell.check_residual(
                    relres(act_zeta(e1, act_zeta(e2, x)), act_zeta(e12, x)),
                    cfg.tol.structural_residual, t);
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "unitary-restriction", "", n);
            const std::vector<double> restriction_kappas{0.3, 0.5, 1.0};
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                ComplexMatrix u = random_unitary(n, cell.trial_seed(t, 2));
                GLElement gu(u);
                DensityState direct = act_alpha(u, rho);
                for (double kappa : restriction_kappas) {
                    DeformationParam dp(kappa);
                    cell.check_residual(
                        relres(act_beta_deformed(gu, rho, dp).hermitian(), direct.hermitian()),
                        cfg.tol.structural_residual, t);
                }
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "normalization-intertwine", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                GLElement g(random_gl(n, cell.trial_seed(t, 2)));
                DensityState via_cone = project_to_states(act_beta_hat(g, immerse(rho)));
                cell.check_residual(relres(act_beta(g, rho).hermitian(), via_cone.hermitian()),
                                    cfg.tol.exact_identity_residual, t);
                CotangentElement e(random_unitary(n, cell.trial_seed(t, 3)),
                                   0.5 * random_observable(n, cell.trial_seed(t, 4)));
                DensityState via_cone2 = project_to_states(act_gamma_hat(e, immerse(rho)));
                cell.check_residual(relres(act_gamma(e, rho).hermitian(), via_cone2.hermitian()),
                                    cfg.tol.exact_identity_residual, t);
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "log-conjugation", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                Rng rng(cell.trial_seed(t, 1));
                double scale = rng.uniform(0.5, 2.0);
                DensityState rho = random_density(n, cell.trial_seed(t, 2));
                PositiveOperator om(scale * rho.hermitian());
                CotangentElement e(random_unitary(n, cell.trial_seed(t, 3)),
                                   0.5 * random_observable(n, cell.trial_seed(t, 4)));
                PositiveOperator direct = act_gamma_hat(e, om);
                HermitianMatrix via_zeta =
                    matrix_exp(act_zeta(e, matrix_log(om.spectral())));
                cell.check_residual(relres(direct.hermitian(), via_zeta),
                                    cfg.tol.structural_residual, t);
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "deformation-conjugacy", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                GLElement g(random_gl(n, cell.trial_seed(t, 2)));
                for (double kappa : cfg.kappas) {
                    DeformationParam dp(kappa);
                    DensityState direct = act_beta_deformed(g, rho, dp);
                    HermitianMatrix powered = matrix_power(rho.spectral(), kappa);
                    PositiveOperator pushed = act_beta_hat(g, PositiveOperator(powered));
                    HermitianMatrix unpowered = matrix_power(pushed.spectral(), 1.0 / kappa);
                    DensityState via_phi = project_to_states(PositiveOperator(unpowered));
                    cell.check_residual(relres(direct.hermitian(), via_phi.hermitian()),
                                        cfg.tol.structural_residual, t);
                }
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "cone-state-relation", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                Observable a = random_observable(n, cell.trial_seed(t, 2));
                PositiveOperator om = immerse(rho);
                const double la = expectation(a, rho);
                HermitianMatrix want_y =
                    fund_Y_hat(a, om).hermitian() - la * rho.hermitian();
                cell.check_residual(relres(fund_Y(a, rho).hermitian(), want_y),
                                    cfg.tol.exact_identity_residual, t);
                HermitianMatrix want_w =
                    fund_W_hat(a, om).hermitian() - expectation(a, rho) * rho.hermitian();
                cell.check_residual(relres(fund_W(a, rho).hermitian(), want_w),
                                    cfg.tol.exact_identity_residual, t);
                for (double kappa : cfg.kappas) {
                    DeformationParam dp(kappa);
                    HermitianMatrix want_z = fund_Z_hat(a, om, dp).hermitian() -
                                             (la / kappa) * rho.hermitian();
                    cell.check_residual(relres(fund_Z(a, rho, dp).hermitian(), want_z),
                                        cfg.tol.exact_identity_residual, t);
                }
                HermitianMatrix eye = HermitianMatrix::identity(n);
                cell.check_residual(
                    relres(dilation_field(om).hermitian(), fund_Y_hat(eye, om).hermitian()),
                    cfg.tol.exact_identity_residual, t);
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "flow-vs-field", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                Rng rng(cell.trial_seed(t, 1));
                double scale = rng.uniform(0.5, 2.0);
                DensityState rho = random_density(n, cell.trial_seed(t, 2));
                PositiveOperator om(scale * rho.hermitian());
                Observable a = unit_observable(n, cell.trial_seed(t, 3));
                Observable b = unit_observable(n, cell.trial_seed(t, 4));
                HermitianMatrix z = HermitianMatrix::zero(n);
                TangentVector xflow = flow_fundamental_numeric(
                    ActionSpec{ActionKind::BetaHat, 1.0}, LieDirection{z, b}, om, cfg.tol.fd_step);
                cell.check_residual(relres(xflow.hermitian(), fund_X_hat(b, om).hermitian()),
                                    cfg.tol.numeric_residual, t);
                TangentVector yflow = flow_fundamental_numeric(
                    ActionSpec{ActionKind::BetaHat, 1.0}, LieDirection{a, z}, om, cfg.tol.fd_step);
                cell.check_residual(relres(yflow.hermitian(), fund_Y_hat(a, om).hermitian()),
                                    cfg.tol.numeric_residual, t);
                TangentVector wflow = flow_fundamental_numeric(
                    ActionSpec{ActionKind::GammaHat, 1.0}, LieDirection{a, z}, om, cfg.tol.fd_step);
                cell.check_residual(relres(wflow.hermitian(), fund_W_hat(a, om).hermitian()),
                                    cfg.tol.numeric_residual, t);
                Observable x = random_observable(n, cell.trial_seed(t, 5));
                HermitianMatrix zflow =
                    flow_fundamental_numeric_zeta(LieDirection{a, b}, x, cfg.tol.fd_step);
                HermitianMatrix zwant = comm(x, b) + a;
                cell.check_residual(relres(zflow, zwant), cfg.tol.numeric_residual, t);
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "expectation-transport", "", n);
            const double h = cfg.tol.fd_step;
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                Observable a = unit_observable(n, cell.trial_seed(t, 2));
                Observable b = unit_observable(n, cell.trial_seed(t, 3));
                double plus = expectation(a, act_alpha(exp_i_scaled(b, -0.5 * h), rho));
                double minus = expectation(a, act_alpha(exp_i_scaled(b, 0.5 * h), rho));
                double got = (plus - minus) / (2.0 * h);
                double want = expectation(comm(b, a), rho);
                cell.check_residual(relres(got, want), cfg.tol.transport_residual, t);
                cell.trial_done();
            }
        }
        {
            Cell cell(rep, cfg, kActions, "reachability", "", n);
            for (int t = 0; t < cfg.trials; ++t) {
                DensityState rho = random_density(n, cell.trial_seed(t, 1));
                DensityState sigma = random_density(n, cell.trial_seed(t, 2));
                GLElement g = connecting_element(rho, sigma);
                cell.check_residual(relres(act_beta(g, rho).hermitian(), sigma.hermitian()),
                                    cfg.tol.structural_residual, t);
                cell.trial_done();
            }
        }
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg) {
    std::vector<SuiteReport> reports;
    reports.push_back(suite_gradient(cfg));
    reports.push_back(suite_commutators(cfg));
    reports.push_back(suite_metric(cfg));
    reports.push_back(suite_kappa_scan(cfg));
    reports.push_back(suite_actions(cfg));
    return reports;
}

nlohmann::ordered_json report_to_json(const std::vector<SuiteReport>& reports,
                                      const SuiteConfig& cfg) {
    using nlohmann::ordered_json;
    ordered_json root;
    root["version"] = kVersion;
    ordered_json config;
    config["dims"] = cfg.dims;
    config["kappas"] = cfg.kappas;
    config["specs"] = cfg.specs;
    config["trials"] = cfg.trials;
    config["seed"] = cfg.seed;
    config["tol_scale"] = cfg.tol_scale;
    root["config"] = config;
    ordered_json suites = ordered_json::array();
    for (const auto& rep : reports) {
        ordered_json jr;
        jr["suite"] = rep.suite;
        ordered_json cells = ordered_json::array();
        for (const auto& c : rep.cells) {
            ordered_json jc;
            jc["suite"] = c.suite;
            jc["check"] = c.check;
            jc["spec"] = c.spec;
            jc["n"] = c.n;
            if (c.has_kappa)
                jc["kappa"] = c.kappa;
            jc["trials"] = c.trials;
            jc["skips"] = c.skips;
            jc["max_abs_residual"] = c.max_abs_residual;
            jc["seed"] = c.seed;
            ordered_json viols = ordered_json::array();
            for (const auto& v : c.violations) {
                ordered_json jv;
                jv["check"] = v.check;
                jv["trial"] = v.trial;
                jv["value"] = v.value;
                jv["threshold"] = v.threshold;
                viols.push_back(jv);
            }
            jc["violations"] = viols;
            if (!c.extra.empty()) {
                ordered_json je;
                for (const auto& [k, v] : c.extra)
                    je[k] = v;
                jc["extra"] = je;
            }
            cells.push_back(jc);
        }
        jr["cells"] = cells;
        suites.push_back(jr);
    }
    root["suites"] = suites;
    root["violations_total"] = total_violations(reports);
    return root;
}

std::string report_to_csv(const std::vector<SuiteReport>& reports) {
    std::string out = "suite,check,n,kappa,spec,trials,skips,max_abs_residual,violations,seed\n";
    char buf[512];
    for (const auto& rep : reports) {
        for (const auto& c : rep.cells) {
            std::string kap = c.has_kappa ? format_kappa(c.kappa) : "";
            std::snprintf(buf, sizeof(buf), "%s,%s,%d,%s,%s,%d,%d,%.17g,%d,%llu\n",
                          c.suite.c_str(), c.check.c_str(), c.n, kap.c_str(), c.spec.c_str(),
                          c.trials, c.skips, c.max_abs_residual, int(c.violations.size()),
                          static_cast<unsigned long long>(c.seed));
            out += buf;
        }
    }
    return out;
}

} // namespace qig
