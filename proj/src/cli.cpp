#include "qig/cli.hpp"

#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qig/group_actions.hpp"
#include "qig/matrix_json.hpp"
#include "qig/petz.hpp"
#include "qig/suites.hpp"

namespace qig {

namespace {

struct CommonOptions {
    SuiteConfig cfg;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--dims", o.cfg.dims, "matrix dimensions to sweep")->delimiter(',');
    sub->add_option("--kappas", o.cfg.kappas, "deformation parameters to sweep")->delimiter(',');
    sub->add_option("--specs", o.cfg.specs,
                    "metric function labels (gl:K, bkm, bh, wy, test:square, test:identity)")
        ->delimiter(',');
    sub->add_option("--trials", o.cfg.trials, "trials per cell")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.cfg.seed, "master seed");
    sub->add_option("--tol-scale", o.cfg.tol_scale, "scale residual thresholds")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "write the report to a file instead of stdout");
}

int emit_report(const std::vector<SuiteReport>& reports, const CommonOptions& o) {
    std::string text;
    if (o.format == "csv")
        text = report_to_csv(reports);
    else
        text = report_to_json(reports, o.cfg).dump(2) + "\n";
    if (o.out.empty())
        std::cout << text;
    else
        write_text_file(o.out, text);
    const int violations = total_violations(reports);
    if (violations > 0) {
        std::cerr << "violations: " << violations << "\n";
        return 2;
    }
    return 0;
}

struct EvalOptions {
    std::string spec;
    double x = 0.0;
    bool has_x = false;
    std::string action;
    std::string state_path;
    std::string element_path;
    std::string unitary_path;
    std::string translation_path;
    double kappa = 1.0;
    std::string out;
};

HermitianMatrix load_hermitian(const std::string& path) {
    return HermitianMatrix(matrix_from_json(load_json_file(path)));
}

int run_eval(const EvalOptions& o) {
    nlohmann::ordered_json result;
    if (!o.spec.empty()) {
        if (!o.has_x)
            throw UsageError("eval --spec requires --x");
        MonotoneFunctionSpec spec = MonotoneFunctionSpec::parse(o.spec);
        result = eval_f(spec, o.x);
    } else if (!o.action.empty()) {
        if (o.state_path.empty())
            throw UsageError("eval --action requires --state");
        const ActionKind kind = parse_action(o.action);
        if (kind == ActionKind::Zeta) {
            if (o.unitary_path.empty() || o.translation_path.empty())
                throw UsageError("zeta needs --unitary and --translation");
            CotangentElement e(matrix_from_json(load_json_file(o.unitary_path)),
                               load_hermitian(o.translation_path));
            HermitianMatrix x = load_hermitian(o.state_path);
            result = matrix_to_json(act_zeta(e, x).matrix());
        } else {
            LoadedState st = state_from_json(load_json_file(o.state_path));
            switch (kind) {
            case ActionKind::Alpha: {
                if (o.unitary_path.empty())
                    throw UsageError("alpha needs --unitary");
                ComplexMatrix u = matrix_from_json(load_json_file(o.unitary_path));
                result = st.is_density ? state_to_json(act_alpha(u, st.density))
                                       : state_to_json(act_alpha(u, st.positive));
                break;
            }
            case ActionKind::BetaHat: {
                if (o.element_path.empty())
                    throw UsageError("beta-hat needs --element");
                GLElement g(matrix_from_json(load_json_file(o.element_path)));
                result = state_to_json(act_beta_hat(g, st.positive));
                break;
            }
            case ActionKind::Beta: {
                if (o.element_path.empty())
                    throw UsageError("beta needs --element");
                if (!st.is_density)
                    throw UsageError("beta acts on density states");
                GLElement g(matrix_from_json(load_json_file(o.element_path)));
                result = state_to_json(act_beta(g, st.density));
                break;
            }
            case ActionKind::BetaDeformed: {
                if (o.element_path.empty())
                    throw UsageError("beta-kappa needs --element");
                if (!st.is_density)
                    throw UsageError("beta-kappa acts on density states");
                GLElement g(matrix_from_json(load_json_file(o.element_path)));
                result = state_to_json(act_beta_deformed(g, st.density, DeformationParam(o.kappa)));
                break;
            }
            case ActionKind::GammaHat:
            case ActionKind::Gamma:
            case ActionKind::GammaDeformed: {
                if (o.unitary_path.empty() || o.translation_path.empty())
                    throw UsageError("gamma actions need --unitary and --translation");
                CotangentElement e(matrix_from_json(load_json_file(o.unitary_path)),
                                   load_hermitian(o.translation_path));
                if (kind == ActionKind::GammaHat) {
                    result = state_to_json(act_gamma_hat(e, st.positive));
                } else if (kind == ActionKind::Gamma) {
                    if (!st.is_density)
                        throw UsageError("gamma acts on density states");
                    result = state_to_json(act_gamma(e, st.density));
                } else {
                    if (!st.is_density)
                        throw UsageError("gamma-kappa acts on density states");
                    result =
                        state_to_json(act_gamma_deformed(e, st.density, DeformationParam(o.kappa)));
                }
                break;
            }
            default:
                throw UsageError("unsupported action '" + o.action + "'");
            }
        }
    } else {
        throw UsageError("eval needs either --spec/--x or --action/--state");
    }
    const std::string text = result.dump(2) + "\n";
    if (o.out.empty())
        std::cout << text;
    else
        write_text_file(o.out, text);
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"verification harness for monotone metrics and group flows on density matrices"};
    app.require_subcommand(1);

    CommonOptions all, gradient, commutators, metric, kappa_scan, actions;
    CLI::App* sub_all = app.add_subcommand("run-all", "run every suite");
    add_common(sub_all, all);
    CLI::App* sub_gradient =
        app.add_subcommand("gradient", "gradients against fundamental fields and flows");
    add_common(sub_gradient, gradient);
    CLI::App* sub_comm = app.add_subcommand("commutators", "vector-field bracket identities");
    add_common(sub_comm, commutators);
    CLI::App* sub_metric =
        app.add_subcommand("metric", "metric axioms, invariance, reduction, contraction");
    add_common(sub_metric, metric);
    CLI::App* sub_kappa =
        app.add_subcommand("kappa-scan", "monotonicity boundary of the power family");
    add_common(sub_kappa, kappa_scan);
    CLI::App* sub_actions = app.add_subcommand("actions", "group action structure checks");
    add_common(sub_actions, actions);

    EvalOptions ev;
    CLI::App* sub_eval = app.add_subcommand("eval", "evaluate a coefficient function or an action");
    sub_eval->add_option("--spec", ev.spec, "function label");
    auto* xopt = sub_eval->add_option("--x", ev.x, "evaluation point");
    sub_eval->add_option("--action", ev.action,
                         "action name (alpha, beta, beta-hat, beta-kappa, gamma, gamma-hat, "
                         "gamma-kappa, zeta)");
    sub_eval->add_option("--state", ev.state_path, "state JSON file");
    sub_eval->add_option("--element", ev.element_path, "group element matrix JSON file");
    sub_eval->add_option("--unitary", ev.unitary_path, "unitary matrix JSON file");
    sub_eval->add_option("--translation", ev.translation_path, "Hermitian matrix JSON file");
    sub_eval->add_option("--kappa", ev.kappa, "deformation parameter");
    sub_eval->add_option("--out", ev.out, "write result to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (sub_eval->parsed()) {
            ev.has_x = xopt->count() > 0;
            return run_eval(ev);
        }
        CommonOptions* o = nullptr;
        std::vector<SuiteReport> reports;
        if (sub_all->parsed()) {
            o = &all;
            o->cfg.finalize();
            reports = run_all_suites(o->cfg);
        } else if (sub_gradient->parsed()) {
            o = &gradient;
            o->cfg.finalize();
            reports.push_back(suite_gradient(o->cfg));
        } else if (sub_comm->parsed()) {
            o = &commutators;
            o->cfg.finalize();
            reports.push_back(suite_commutators(o->cfg));
        } else if (sub_metric->parsed()) {
            o = &metric;
            o->cfg.finalize();
            reports.push_back(suite_metric(o->cfg));
        } else if (sub_kappa->parsed()) {
            o = &kappa_scan;
            o->cfg.finalize();
            reports.push_back(suite_kappa_scan(o->cfg));
        } else if (sub_actions->parsed()) {
            o = &actions;
            o->cfg.finalize();
            reports.push_back(suite_actions(o->cfg));
        } else {
            throw UsageError("no subcommand selected");
        }
        return emit_report(reports, *o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.push_back("qig");
    for (const auto& a : args)
        full.push_back(a);
    std::vector<const char*> argv;
    for (const auto& a : full)
        argv.push_back(a.c_str());
    return cli_main(int(argv.size()), argv.data());
}

} // namespace qig
