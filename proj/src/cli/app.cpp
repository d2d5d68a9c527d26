#include "synthaudit/cli/app.hpp"

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synthaudit/cli/commands.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/tabular/csv.hpp"
#include "synthaudit/tabular/toy_data.hpp"

namespace synthaudit::cli {

namespace {

struct Bound {
    AuditOptions opt;
    std::string hidden = "100,50";
};

void add_inputs(CLI::App* sub, Bound& b) {
    sub->add_option("--data", b.opt.data, "Real data CSV")->required();
    sub->add_option("--schema", b.opt.schema, "Schema JSON")->required();
    sub->add_option("--seed", b.opt.seed, "Base seed; repetition r uses seed + r")->capture_default_str();
    sub->add_option("--jobs", b.opt.jobs, "Worker threads")->capture_default_str();
    sub->add_option("--reps", b.opt.reps, "Repetitions")->capture_default_str();
}

void add_generator(CLI::App* sub, Bound& b) {
    sub->add_option("--generator", b.opt.generator,
                    "builtin:independent_marginals | builtin:identity | risk:leaky:p=<v> | "
                    "risk:anonymizer:alpha=<v> | exec:<command with {train} {schema} {out} {size} {seed}>");
    sub->add_option("--leaky-control", b.opt.leaky_control, "Control CSV for risk:leaky (rows disjoint from --data)");
    sub->add_option("--timeout-secs", b.opt.timeout_secs, "Wall-clock limit per external generator call")
        ->capture_default_str();
    sub->add_option("--workdir", b.opt.workdir, "Parent directory for external generator working directories");
}

void add_mlp(CLI::App* sub, Bound& b) {
    sub->add_option("--hidden", b.hidden, "Hidden layer sizes, comma separated ('none' for logistic regression)")
        ->capture_default_str();
    sub->add_option("--lr", b.opt.mlp.learning_rate, "Learning rate")->capture_default_str();
    sub->add_option("--epochs", b.opt.mlp.max_epochs, "Maximum epochs")->capture_default_str();
    sub->add_option("--batch-size", b.opt.mlp.batch_size, "Minibatch size")->capture_default_str();
    sub->add_option("--patience", b.opt.mlp.patience, "Early-stopping patience in epochs")->capture_default_str();
    sub->add_option("--eval-every", b.opt.mlp.eval_every, "Recording interval in epochs")->capture_default_str();
}

void add_remia(CLI::App* sub, Bound& b) {
    sub->add_option("--target-fraction", b.opt.target_fraction, "Target fraction f in (0, 1]")->capture_default_str();
    sub->add_option("--threshold", b.opt.threshold, "Training AUROC threshold for score selection")->capture_default_str();
}

void add_dcr(CLI::App* sub, Bound& b) {
    sub->add_option("--holdout", b.opt.holdout, "Holdout CSV (default: seeded half split of --data)");
}

void add_domias(CLI::App* sub, Bound& b) {
    sub->add_option("--reference", b.opt.reference, "Reference CSV (default: carved from --data)");
    sub->add_option("--control", b.opt.control, "Control (non-member) CSV (default: carved from --data)");
    sub->add_option("--reference-multiple", b.opt.reference_multiple, "Reference size as a multiple of the training size")
        ->capture_default_str();
    sub->add_option("--control-multiple", b.opt.control_multiple, "Control size as a multiple of the training size")
        ->capture_default_str();
}

void add_quality(CLI::App* sub, Bound& b) {
    sub->add_option("--folds", b.opt.folds, "Detection folds")->capture_default_str();
    sub->add_option("--target-column", b.opt.target_column, "Target column for ML efficacy");
    sub->add_option("--task", b.opt.task, "binary | multiclass | regression");
    sub->add_option("--test", b.opt.test, "Real test CSV for ML efficacy (default: seeded 80/20 split of --data)");
}

void finish(Bound& b, int argc, char** argv) {
    b.opt.mlp.hidden_sizes = parse_hidden_sizes(b.hidden);
    b.opt.command.assign(argv, argv + argc);
}

void emit_report(const Json& report, const std::filesystem::path& out) {
    write_text_file(out, report.dump(2) + "\n");
    std::cout << summary_line(report) << " -> " << out.string() << "\n";
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Privacy and quality audit of synthetic tabular data", "audit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Bound remia_b, dcr_b, domias_b, quality_b, sweep_b;
    quality_b.opt.reps = 1;

    auto* remia = app.add_subcommand("remia", "Relative membership-inference score");
    add_inputs(remia, remia_b);
    add_generator(remia, remia_b);
    add_remia(remia, remia_b);
    add_mlp(remia, remia_b);
    remia->add_option("--out", remia_b.opt.out, "Report JSON")->required();

    auto* dcr = app.add_subcommand("dcr", "Distance-to-closest-record score");
    add_inputs(dcr, dcr_b);
    add_generator(dcr, dcr_b);
    dcr->add_option("--synth", dcr_b.opt.synth, "Score this synthetic CSV instead of generating");
    add_dcr(dcr, dcr_b);
    dcr->add_option("--out", dcr_b.opt.out, "Report JSON")->required();

    auto* domias = app.add_subcommand("domias", "Density-ratio membership inference (KDE)");
    add_inputs(domias, domias_b);
    add_generator(domias, domias_b);
    domias->add_option("--synth", domias_b.opt.synth, "Score this synthetic CSV instead of generating");
    add_domias(domias, domias_b);
    domias->add_option("--out", domias_b.opt.out, "Report JSON")->required();

    auto* quality = app.add_subcommand("quality", "Detection AUROC and ML efficacy");
    add_inputs(quality, quality_b);
    add_generator(quality, quality_b);
    quality->add_option("--synth", quality_b.opt.synth, "Score this synthetic CSV instead of generating");
    add_quality(quality, quality_b);
    add_mlp(quality, quality_b);
    quality->add_option("--out", quality_b.opt.out, "Report JSON")->required();

    std::string sweep_metric = "remia", sweep_family, sweep_grid;
    auto* sweep = app.add_subcommand("sweep", "Run a metric over a risk-model parameter grid");
    add_inputs(sweep, sweep_b);
    sweep->add_option("--metric", sweep_metric, "remia | dcr | domias | detection")->capture_default_str();
    sweep->add_option("--family", sweep_family, "leaky (grid over p) | anonymizer (grid over alpha)")->required();
    sweep->add_option("--grid", sweep_grid, "Comma-separated parameter values")->required();
    sweep->add_option("--leaky-control", sweep_b.opt.leaky_control, "Control CSV for the leaky family");
    add_remia(sweep, sweep_b);
    add_dcr(sweep, sweep_b);
    add_domias(sweep, sweep_b);
    sweep->add_option("--folds", sweep_b.opt.folds, "Detection folds")->capture_default_str();
    add_mlp(sweep, sweep_b);
    sweep->add_option("--out", sweep_b.opt.out, "Sweep CSV")->required();

    std::vector<std::filesystem::path> compare_reports;
    std::string clip_order = "after";
    std::filesystem::path compare_out;
    auto* compare = app.add_subcommand("compare", "Spearman correlation of mean scores across metrics");
    compare->add_option("reports", compare_reports, "Report JSON files")->required();
    compare->add_option("--clip-order", clip_order, "Clip at 0.5 after or before averaging repetitions")
        ->check(CLI::IsMember({"after", "before"}))
        ->capture_default_str();
    compare->add_option("--out", compare_out, "Correlation JSON (default: stdout only)");

    std::string toy_kind = "mixture";
    std::size_t toy_rows = 3000;
    std::uint64_t toy_seed = 0;
    std::filesystem::path toy_out, toy_schema_out;
    auto* toy = app.add_subcommand("toy-data", "Write a seeded toy dataset and its schema");
    toy->add_option("--kind", toy_kind, "mixture | independent")
        ->check(CLI::IsMember({"mixture", "independent"}))
        ->capture_default_str();
    toy->add_option("--rows", toy_rows, "Row count")->capture_default_str();
    toy->add_option("--seed", toy_seed, "Seed")->capture_default_str();
    toy->add_option("--out", toy_out, "CSV output")->required();
    toy->add_option("--schema-out", toy_schema_out, "Schema JSON output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (remia->parsed()) {
            finish(remia_b, argc, argv);
            emit_report(cmd_remia(remia_b.opt), remia_b.opt.out);
        } else if (dcr->parsed()) {
            finish(dcr_b, argc, argv);
            emit_report(cmd_dcr(dcr_b.opt), dcr_b.opt.out);
        } else if (domias->parsed()) {
            finish(domias_b, argc, argv);
            emit_report(cmd_domias(domias_b.opt), domias_b.opt.out);
        } else if (quality->parsed()) {
            finish(quality_b, argc, argv);
            emit_report(cmd_quality(quality_b.opt), quality_b.opt.out);
        } else if (sweep->parsed()) {
            finish(sweep_b, argc, argv);
            const auto rows = cmd_sweep(sweep_metric, sweep_family, parse_grid(sweep_grid), sweep_b.opt);
            write_text_file(sweep_b.opt.out, sweep_csv(rows));
            std::size_t failed = 0;
            for (const auto& r : rows) failed += r.status != "ok";
            std::cout << "sweep metric=" << sweep_metric << " family=" << sweep_family << " points=" << rows.size()
                      << " failed=" << failed << " -> " << sweep_b.opt.out.string() << "\n";
        } else if (compare->parsed()) {
            const Json result =
                cmd_compare(compare_reports, clip_order == "after" ? ClipOrder::after_mean : ClipOrder::before_mean);
            if (!compare_out.empty()) write_text_file(compare_out, result.dump(2) + "\n");
            std::cout << result.dump(2) << "\n";
        } else if (toy->parsed()) {
            const tabular::Table t = toy_kind == "mixture" ? tabular::make_mixture_table(toy_rows, toy_seed)
                                                           : tabular::make_independent_table(toy_rows, toy_seed);
            tabular::write_csv(t, toy_out);
            tabular::save_schema(t.schema(), toy_schema_out);
            std::cout << "toy-data kind=" << toy_kind << " rows=" << t.num_rows() << " -> " << toy_out.string() << "\n";
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const GeneratorError& e) {
        std::cerr << "generator error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        if (!e.stderr_tail().empty()) std::cerr << "--- adapter stderr (tail) ---\n" << e.stderr_tail() << "\n";
        return kExitGenerator;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace synthaudit::cli
