#include "passcov/cli.hpp"

#include <ostream>

#include "passcov/experiments.hpp"

#include "../vendor/CLI11.hpp"

namespace passcov {

namespace {

struct CommonOpts {
    std::string config;
    std::string out_path;
    std::string summary_path;
    std::string format = "csv";
    std::int64_t seed = -1;
};

void add_common(CLI::App* sub, CommonOpts& o, bool out_required = true) {
    sub->add_option("--config", o.config, "scenario JSON (defaults when omitted)");
    auto* out = sub->add_option("--out", o.out_path, "output table path");
    if (out_required) out->required();
    sub->add_option("--summary-out", o.summary_path,
                    "summary table path (default: derived from --out)");
    sub->add_option("--format", o.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--seed", o.seed,
                    "override the optimizer and Monte-Carlo seeds");
}

std::string derived_sidecar_path(const std::string& out_path, const std::string& tag) {
    const std::size_t slash = out_path.find_last_of('/');
    const std::size_t dot = out_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out_path + tag;
    return out_path.substr(0, dot) + tag + out_path.substr(dot);
}

std::string derived_summary_path(const std::string& out_path) {
    return derived_sidecar_path(out_path, ".summary");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"covert pinching-antenna downlink toolkit"};
    app.require_subcommand(1);

    CommonOpts o_curve, o_sweep, o_acr, o_opt, o_study, o_val;
    CLI::App* c_curve = app.add_subcommand(
        "dep-curve", "fused detectability versus detection threshold");
    add_common(c_curve, o_curve);
    CLI::App* c_sweep = app.add_subcommand(
        "dep-vs-jamming", "worst-case detectability versus jamming budget");
    add_common(c_sweep, o_sweep);
    CLI::App* c_acr = app.add_subcommand(
        "acr-curve", "average covert rate versus covert power");
    add_common(c_acr, o_acr);
    CLI::App* c_opt = app.add_subcommand(
        "optimize", "maximize the covert rate subject to covertness");
    add_common(c_opt, o_opt);
    CLI::App* c_study = app.add_subcommand(
        "optimizer-study",
        "compare the optimizer against baselines per covertness level");
    add_common(c_study, o_study);
    CLI::App* c_val = app.add_subcommand(
        "validate", "run internal cross-checks on a scenario");
    add_common(c_val, o_val);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("passcov");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const CommonOpts* o = nullptr;
    if (app.got_subcommand(c_curve)) o = &o_curve;
    else if (app.got_subcommand(c_sweep)) o = &o_sweep;
    else if (app.got_subcommand(c_acr)) o = &o_acr;
    else if (app.got_subcommand(c_opt)) o = &o_opt;
    else if (app.got_subcommand(c_study)) o = &o_study;
    else o = &o_val;

    try {
        ScenarioConfig cfg = load_scenario(o->config);
        if (o->seed >= 0) {
            cfg.opt.seed = static_cast<std::uint64_t>(o->seed);
            cfg.mc_seed = static_cast<std::uint64_t>(o->seed);
        }
        const OutFormat fmt = parse_format(o->format);

        ExperimentOutput res;
        std::vector<Record> study_traces;
        bool checks_ok = true;
        if (app.got_subcommand(c_curve)) res = run_dep_vs_tau(cfg);
        else if (app.got_subcommand(c_sweep)) res = run_dep_vs_jamming(cfg);
        else if (app.got_subcommand(c_acr)) res = run_acr_vs_pc(cfg);
        else if (app.got_subcommand(c_opt)) res = run_optimize(cfg);
        else if (app.got_subcommand(c_study)) res = run_optimizer_study(cfg, &study_traces);
        else res = run_validate(cfg, &checks_ok);

        const std::string summary_path = o->summary_path.empty()
                                             ? derived_summary_path(o->out_path)
                                             : o->summary_path;
        write_records_file(o->out_path, res.rows, fmt);
        write_records_file(summary_path, res.summary, fmt);
        out << "wrote " << res.rows.size() << " rows to " << o->out_path
            << " and " << res.summary.size() << " summary rows to "
            << summary_path << "\n";
        if (app.got_subcommand(c_study)) {
            const std::string trace_path = derived_sidecar_path(o->out_path, ".trace");
            write_records_file(trace_path, study_traces, fmt);
            out << "wrote " << study_traces.size() << " trace rows to "
                << trace_path << "\n";
        }
        if (!checks_ok) {
            err << "validation checks failed\n";
            return 4;
        }
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SelectorInvalid& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleGeometry& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoFeasibleGridPoint& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const RejectionBudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace passcov
