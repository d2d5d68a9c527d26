#include "synthaudit/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "synthaudit/baselines/dcr.hpp"
#include "synthaudit/baselines/domias.hpp"
#include "synthaudit/cli/generator_flag.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/parallel.hpp"
#include "synthaudit/quality/quality.hpp"
#include "synthaudit/random.hpp"
#include "synthaudit/remia/remia.hpp"
#include "synthaudit/tabular/csv.hpp"

namespace synthaudit::cli {

using tabular::RowId;
using tabular::Table;

namespace {

constexpr RowId kLeakyControlBase = RowId{1} << 40;
constexpr RowId kHoldoutBase = RowId{2} << 40;
constexpr RowId kReferenceBase = RowId{3} << 40;
constexpr RowId kControlBase = RowId{4} << 40;
constexpr RowId kTestBase = RowId{5} << 40;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json path_or_null(const std::filesystem::path& p) { return p.empty() ? Json(nullptr) : Json(p.string()); }

struct Inputs {
    tabular::Schema schema;
    Table data;
};

Inputs load_inputs(const AuditOptions& opt) {
    if (opt.data.empty()) throw ValidationError("--data is required");
    if (opt.schema.empty()) throw ValidationError("--schema is required");
    tabular::Schema schema = tabular::load_schema(opt.schema);
    Table data = tabular::load_table(opt.data, schema, 0);
    return {std::move(schema), std::move(data)};
}

std::optional<Table> load_optional(const std::filesystem::path& p, const tabular::Schema& schema, RowId base) {
    if (p.empty()) return std::nullopt;
    return tabular::load_table(p, schema, base);
}

GeneratorContext generator_context(const AuditOptions& opt, const tabular::Schema& schema) {
    if (opt.timeout_secs < 1) throw ValidationError("--timeout-secs must be at least 1");
    GeneratorContext ctx;
    ctx.timeout = std::chrono::seconds(opt.timeout_secs);
    ctx.workdir_root = opt.workdir;
    if (!opt.leaky_control.empty())
        ctx.leaky_control = std::make_shared<const Table>(tabular::load_table(opt.leaky_control, schema, kLeakyControlBase));
    return ctx;
}

/// Generator from the flag, or none when an existing synthetic table is scored.
std::optional<generators::GeneratorSpec> resolve_generator(const AuditOptions& opt, const tabular::Schema& schema,
                                                           const generators::GeneratorSpec* given) {
    if (given) return *given;
    if (!opt.synth.empty()) {
        if (!opt.generator.empty()) throw ValidationError("--generator and --synth are mutually exclusive");
        return std::nullopt;
    }
    if (opt.generator.empty()) throw ValidationError("--generator is required (or --synth for an existing synthetic table)");
    return parse_generator_flag(opt.generator, generator_context(opt, schema));
}

std::string generator_label(const std::optional<generators::GeneratorSpec>& gen, const AuditOptions& opt) {
    return gen ? generators::describe(*gen) : "file:" + opt.synth.string();
}

void validate_common(const AuditOptions& opt) {
    if (opt.reps < 1) throw ValidationError("--reps must be at least 1");
    if (opt.jobs < 1) throw ValidationError("--jobs must be at least 1");
    opt.mlp.validate();
}

std::vector<std::uint64_t> rep_seeds(const AuditOptions& opt) {
    std::vector<std::uint64_t> s(static_cast<std::size_t>(opt.reps));
    for (std::size_t r = 0; r < s.size(); ++r) s[r] = opt.seed + r;
    return s;
}

/// Splits the worker budget between repetitions and the work inside one.
std::pair<std::size_t, std::size_t> job_split(const AuditOptions& opt) {
    const std::size_t outer = std::min<std::size_t>(opt.jobs, static_cast<std::size_t>(opt.reps));
    return {outer, outer > 1 ? 1 : opt.jobs};
}

std::vector<std::size_t> shuffled_positions(std::size_t n, std::uint64_t seed, std::uint64_t tag) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto rng = make_rng(seed, {tag});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

Table take(const Table& t, const std::vector<std::size_t>& perm, std::size_t from, std::size_t count) {
    return t.select(std::span<const std::size_t>(perm.data() + from, count));
}

Table first_rows(const Table& t, std::size_t count) {
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return t.select(idx);
}

Json common_config(const AuditOptions& opt, const std::string& generator) {
    return {{"data", opt.data.string()},
            {"schema", opt.schema.string()},
            {"generator", generator},
            {"leaky_control", path_or_null(opt.leaky_control)},
            {"synth", path_or_null(opt.synth)},
            {"seed", opt.seed},
            {"repetitions", opt.reps},
            {"jobs", opt.jobs},
            {"timeout_secs", opt.timeout_secs},
            {"command", opt.command}};
}

Json dataset_json(const AuditOptions& opt, const Table& data) {
    Json d = fingerprint_json(data);
    d["path"] = opt.data.string();
    return d;
}

Json significance_json(std::size_t correct, std::size_t total, double p_value) {
    return {{"test", "one-sided binomial, H0 rate 0.5"},
            {"successes", correct},
            {"trials", total},
            {"p_value", p_value},
            {"alpha", remia::kSignificanceLevel},
            {"significant", p_value < remia::kSignificanceLevel}};
}

Json remia_report(const AuditOptions& opt, const generators::GeneratorSpec* given) {
    const auto t0 = Clock::now();
    validate_common(opt);
    if (!opt.synth.empty()) throw ValidationError("remia generates its own synthetic tables; --synth is not supported");
    remia::RemiaConfig cfg;
    cfg.target_fraction = opt.target_fraction;
    cfg.train_auroc_threshold = opt.threshold;
    cfg.repetitions = opt.reps;
    cfg.discriminator = opt.mlp;
    cfg.base_seed = opt.seed;
    cfg.jobs = opt.jobs;
    cfg.validate();

    const Inputs in = load_inputs(opt);
    const auto gen = resolve_generator(opt, in.schema, given);
    const auto res = remia::remia_score(in.data, *gen, cfg);

    Json r = report_header("remia");
    r["generator"] = generators::describe(*gen);
    r["dataset"] = dataset_json(opt, in.data);
    Json config = common_config(opt, r["generator"]);
    config["target_fraction"] = cfg.target_fraction;
    config["train_auroc_threshold"] = cfg.train_auroc_threshold;
    config["smoothing_window_fraction"] = 0.10;
    config["discriminator"] = mlp_config_json(cfg.discriminator);
    config["encoder_fitted_on"] = "synthetic (S1 + S2)";
    r["config"] = config;
    put_summary(r, res.scores());
    r["significance"] = significance_json(res.accuracy.correct, res.accuracy.total, res.p_value);
    r["records_used"] = res.records_used;
    r["seeds"] = rep_seeds(opt);
    r["flags"] = {{"threshold_not_reached", res.threshold_not_reached()}};
    Json reps = Json::array();
    for (const auto& rep : res.repetitions) {
        Json iters = Json::array(), p_train = Json::array(), p_target = Json::array(), smoothed = Json::array();
        const auto& tr = rep.trace;
        for (std::size_t i = 0; i < tr.train_series.size(); ++i) {
            iters.push_back(tr.train_series.points()[i].iteration);
            p_train.push_back(tr.train_series.points()[i].value);
            p_target.push_back(tr.target_series.points()[i].value);
            smoothed.push_back(tr.smoothed_target.points()[i].value);
        }
        reps.push_back({{"seed", rep.seed},
                        {"score", rep.score},
                        {"selected_iteration", rep.selected_iteration},
                        {"threshold_not_reached", rep.threshold_not_reached},
                        {"max_smoothed_target", rep.max_smoothed_target},
                        {"correct", rep.accuracy.correct},
                        {"total", rep.accuracy.total},
                        {"epochs_run", rep.epochs_run},
                        {"training_size", rep.training_size},
                        {"target_size", rep.target_size},
                        {"records_used", rep.records_used},
                        {"trace", {{"iterations", iters}, {"p_train", p_train}, {"p_target", p_target},
                                   {"smoothed_target", smoothed}}}});
    }
    r["repetitions"] = reps;
    r["wall_seconds"] = seconds_since(t0);
    return r;
}

Json dcr_report(const AuditOptions& opt, const generators::GeneratorSpec* given) {
    const auto t0 = Clock::now();
    validate_common(opt);
    const Inputs in = load_inputs(opt);
    const auto gen = resolve_generator(opt, in.schema, given);
    const auto holdout = load_optional(opt.holdout, in.schema, kHoldoutBase);
    const auto synth = load_optional(opt.synth, in.schema, tabular::kSyntheticIdBase);
    if (!holdout && in.data.num_rows() < 2) throw ValidationError("DCR needs at least 2 rows to split off a holdout");

    const auto seeds = rep_seeds(opt);
    std::vector<baselines::DcrResult> results(seeds.size());
    std::vector<std::size_t> used(seeds.size());
    const auto [outer, inner] = job_split(opt);
    parallel_for(seeds.size(), outer, [&](std::size_t r) {
        Table train = in.data, hold = in.data;
        if (holdout) {
            hold = *holdout;
        } else {
            const auto perm = shuffled_positions(in.data.num_rows(), seeds[r], 0xdc4);
            const std::size_t h = in.data.num_rows() / 2;
            train = take(in.data, perm, 0, h);
            hold = take(in.data, perm, h, h);
        }
        const Table s = synth ? *synth : generators::generate(*gen, train, train.num_rows(), derive_seed(seeds[r], {1}));
        results[r] = baselines::dcr_score(train, s, hold, inner);
        used[r] = train.num_rows() + hold.num_rows();
    });

    Json r = report_header("dcr");
    r["generator"] = generator_label(gen, opt);
    r["dataset"] = dataset_json(opt, in.data);
    Json config = common_config(opt, r["generator"]);
    config["holdout"] = path_or_null(opt.holdout);
    config["holdout_split"] = holdout ? "file" : "seeded half split of --data";
    config["distance"] = "cosine on one-hot + standardized features fitted on train";
    config["comparison"] = "strict <, ties count 0";
    r["config"] = config;
    std::vector<double> scores;
    std::size_t closer = 0, total = 0;
    Json reps = Json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        scores.push_back(results[i].fraction);
        closer += results[i].closer;
        total += results[i].total;
        reps.push_back({{"seed", seeds[i]}, {"score", results[i].fraction}, {"closer", results[i].closer},
                        {"total", results[i].total}, {"p_value", results[i].p_value}});
    }
    put_summary(r, scores);
    r["significance"] = significance_json(closer, total, stats::binomial_test_upper(closer, total));
    r["records_used"] = used.front();
    r["seeds"] = seeds;
    r["flags"] = Json::object();
    r["repetitions"] = reps;
    r["wall_seconds"] = seconds_since(t0);
    return r;
}

Json domias_report(const AuditOptions& opt, const generators::GeneratorSpec* given) {
    const auto t0 = Clock::now();
    validate_common(opt);
    if (!(opt.reference_multiple > 0.0) || !(opt.control_multiple > 0.0))
        throw ValidationError("--reference-multiple and --control-multiple must be positive");
    const Inputs in = load_inputs(opt);
    const auto gen = resolve_generator(opt, in.schema, given);
    const auto reference = load_optional(opt.reference, in.schema, kReferenceBase);
    const auto control = load_optional(opt.control, in.schema, kControlBase);
    const auto synth = load_optional(opt.synth, in.schema, tabular::kSyntheticIdBase);

    const double parts = 1.0 + (reference ? 0.0 : opt.reference_multiple) + (control ? 0.0 : opt.control_multiple);
    const auto s = static_cast<std::size_t>(std::floor(static_cast<double>(in.data.num_rows()) / parts + 1e-9));
    const auto n_ref = static_cast<std::size_t>(std::floor(opt.reference_multiple * static_cast<double>(s) + 1e-9));
    const auto n_ctl = static_cast<std::size_t>(std::floor(opt.control_multiple * static_cast<double>(s) + 1e-9));
    if (s < 2 || n_ref < 2 || n_ctl < 1)
        throw ValidationError("DOMIAS: " + std::to_string(in.data.num_rows()) + " rows are too few for the requested train/reference/control sizing");
    if (reference && reference->num_rows() < n_ref)
        throw ValidationError("DOMIAS: --reference has " + std::to_string(reference->num_rows()) + " rows, need " + std::to_string(n_ref));
    if (control && control->num_rows() < n_ctl)
        throw ValidationError("DOMIAS: --control has " + std::to_string(control->num_rows()) + " rows, need " + std::to_string(n_ctl));

    const auto seeds = rep_seeds(opt);
    std::vector<baselines::DomiasResult> results(seeds.size());
    const auto [outer, inner] = job_split(opt);
    parallel_for(seeds.size(), outer, [&](std::size_t r) {
        const auto perm = shuffled_positions(in.data.num_rows(), seeds[r], 0xd0);
        std::size_t at = 0;
        const Table train = take(in.data, perm, at, s);
        at += s;
        const Table ref = reference ? first_rows(*reference, n_ref) : take(in.data, perm, at, n_ref);
        if (!reference) at += n_ref;
        const Table ctl = control ? first_rows(*control, n_ctl) : take(in.data, perm, at, n_ctl);
        const Table syn = synth ? *synth : generators::generate(*gen, train, s, derive_seed(seeds[r], {1}));
        results[r] = baselines::domias_score(train, syn, ref, ctl, inner);
    });

    Json r = report_header("domias");
    r["generator"] = generator_label(gen, opt);
    r["dataset"] = dataset_json(opt, in.data);
    Json config = common_config(opt, r["generator"]);
    config["reference"] = path_or_null(opt.reference);
    config["control"] = path_or_null(opt.control);
    config["reference_multiple"] = opt.reference_multiple;
    config["control_multiple"] = opt.control_multiple;
    config["train_size"] = s;
    config["reference_size"] = n_ref;
    config["control_size"] = n_ctl;
    config["pca_variance_keep"] = baselines::kDomiasVarianceKeep;
    config["bandwidth"] = "scott";
    config["encoder_fitted_on"] = "reference + synthetic";
    r["config"] = config;
    std::vector<double> scores;
    Json reps = Json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        scores.push_back(results[i].auroc);
        reps.push_back({{"seed", seeds[i]}, {"score", results[i].auroc}, {"components", results[i].components},
                        {"bandwidth_synth", results[i].bandwidth_synth},
                        {"bandwidth_reference", results[i].bandwidth_reference}});
    }
    put_summary(r, scores);
    r["significance"] = nullptr;
    r["records_used"] = s + n_ref + n_ctl;
    r["seeds"] = seeds;
    r["flags"] = Json::object();
    r["repetitions"] = reps;
    r["wall_seconds"] = seconds_since(t0);
    return r;
}

Json quality_report(const AuditOptions& opt, const generators::GeneratorSpec* given, bool detection_only) {
    const auto t0 = Clock::now();
    validate_common(opt);
    const bool efficacy = !detection_only && !opt.target_column.empty();
    std::optional<quality::Task> task;
    if (efficacy) {
        if (opt.task.empty()) throw ValidationError("--task is required with --target-column");
        task = quality::parse_task(opt.task);
    }
    const Inputs in = load_inputs(opt);
    const auto gen = resolve_generator(opt, in.schema, given);
    const auto test = load_optional(opt.test, in.schema, kTestBase);
    const auto synth = load_optional(opt.synth, in.schema, tabular::kSyntheticIdBase);
    if (efficacy && !test && in.data.num_rows() < 5) throw ValidationError("too few rows to split off a test set");

    const auto seeds = rep_seeds(opt);
    std::vector<quality::DetectionResult> det(seeds.size());
    std::vector<quality::EfficacyResult> eff(seeds.size());
    const auto [outer, inner] = job_split(opt);
    parallel_for(seeds.size(), outer, [&](std::size_t r) {
        Table real = in.data, held = in.data;
        if (efficacy && test) {
            held = *test;
        } else if (efficacy) {
            const auto perm = shuffled_positions(in.data.num_rows(), seeds[r], 0x9a);
            const auto n_train = static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(in.data.num_rows())));
            real = take(in.data, perm, 0, n_train);
            held = take(in.data, perm, n_train, in.data.num_rows() - n_train);
        }
        const Table syn = synth ? *synth : generators::generate(*gen, real, real.num_rows(), derive_seed(seeds[r], {1}));
        det[r] = quality::detection(real, syn, opt.folds, derive_seed(seeds[r], {2}), opt.mlp, inner);
        if (efficacy) eff[r] = quality::ml_efficacy(real, syn, held, opt.target_column, *task, derive_seed(seeds[r], {3}), opt.mlp);
    });

    Json r = report_header(detection_only ? "detection" : "quality");
    r["generator"] = generator_label(gen, opt);
    r["dataset"] = dataset_json(opt, in.data);
    Json config = common_config(opt, r["generator"]);
    config["folds"] = opt.folds;
    config["fold_split"] = "seeded 80/20 shuffle per fold";
    config["model"] = mlp_config_json(opt.mlp);
    config["target_column"] = efficacy ? Json(opt.target_column) : Json(nullptr);
    config["task"] = efficacy ? Json(opt.task) : Json(nullptr);
    config["test"] = path_or_null(opt.test);
    r["config"] = config;

    std::vector<double> scores;
    Json reps = Json::array();
    for (std::size_t i = 0; i < det.size(); ++i) {
        scores.push_back(det[i].mean);
        Json folds = Json::array();
        for (const auto& f : det[i].folds) folds.push_back(f.auroc);
        Json rep = {{"seed", seeds[i]}, {"detection", det[i].mean}, {"fold_auroc", folds}};
        if (efficacy)
            rep["ml_efficacy"] = {{"synth_score", eff[i].synth_score}, {"real_score", eff[i].real_score},
                                  {"difference", eff[i].difference}};
        reps.push_back(rep);
    }
    put_summary(r, scores);
    r["score_meaning"] = "detection AUROC, lower means higher fidelity";
    if (efficacy) {
        std::vector<double> diffs;
        for (const auto& e : eff) diffs.push_back(e.difference);
        r["ml_efficacy"] = {{"metric", eff.front().metric},
                            {"model_id", eff.front().model_id},
                            {"differences", diffs},
                            {"mean", stats::mean(diffs)},
                            {"std", diffs.size() > 1 ? stats::sample_std(diffs) : 0.0}};
    }
    r["significance"] = nullptr;
    r["records_used"] = in.data.num_rows() + (test ? test->num_rows() : 0);
    r["seeds"] = seeds;
    r["flags"] = Json::object();
    r["repetitions"] = reps;
    r["wall_seconds"] = seconds_since(t0);
    return r;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string optional_number(const std::optional<double>& v) { return v ? tabular::format_number(*v) : ""; }

}  // namespace

Json run_metric(const std::string& metric, const AuditOptions& opt, const generators::GeneratorSpec* generator) {
    if (metric == "remia") return remia_report(opt, generator);
    if (metric == "dcr") return dcr_report(opt, generator);
    if (metric == "domias") return domias_report(opt, generator);
    if (metric == "detection") return quality_report(opt, generator, true);
    if (metric == "quality") return quality_report(opt, generator, false);
    throw ValidationError("unknown metric '" + metric + "' (expected remia, dcr, domias or detection)");
}

Json cmd_remia(const AuditOptions& opt) { return remia_report(opt, nullptr); }
Json cmd_dcr(const AuditOptions& opt) { return dcr_report(opt, nullptr); }
Json cmd_domias(const AuditOptions& opt) { return domias_report(opt, nullptr); }
Json cmd_quality(const AuditOptions& opt) { return quality_report(opt, nullptr, false); }

std::vector<SweepRow> cmd_sweep(const std::string& metric, const std::string& family, const std::vector<double>& grid,
                                const AuditOptions& opt) {
    if (metric != "remia" && metric != "dcr" && metric != "domias" && metric != "detection")
        throw ValidationError("unknown sweep metric '" + metric + "' (expected remia, dcr, domias or detection)");
    if (family != "leaky" && family != "anonymizer")
        throw ValidationError("unknown sweep family '" + family + "' (expected leaky or anonymizer)");
    if (grid.empty()) throw ValidationError("sweep grid is empty");
    for (double v : grid)
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("sweep grid values must lie in [0, 1]");
    if (!opt.synth.empty()) throw ValidationError("sweep generates its own synthetic tables; --synth is not supported");

    std::shared_ptr<const Table> control;
    if (family == "leaky") {
        if (opt.leaky_control.empty()) throw ValidationError("a leaky sweep needs --leaky-control");
        const auto schema = tabular::load_schema(opt.schema);
        control = std::make_shared<const Table>(tabular::load_table(opt.leaky_control, schema, kLeakyControlBase));
    }

    std::vector<SweepRow> rows(grid.size());
    AuditOptions point_opt = opt;
    const std::size_t outer = std::min(opt.jobs, grid.size());
    point_opt.jobs = outer > 1 ? 1 : opt.jobs;
    parallel_for(grid.size(), outer, [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.param = grid[i];
        row.metric = metric;
        if (family == "leaky") row.leaky_ceiling = remia::leaky_ceiling(grid[i]);
        const generators::GeneratorSpec spec = family == "leaky"
                                                   ? generators::GeneratorSpec(generators::Leaky{grid[i], control})
                                                   : generators::GeneratorSpec(generators::Anonymizer{grid[i]});
        try {
            const Json report = run_metric(metric, point_opt, &spec);
            row.mean = report["mean"].get<double>();
            row.std = report["std"].get<double>();
            row.status = "ok";
        } catch (const std::exception& e) {
            row.status = "failed";
            row.message = e.what();
        }
    });
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "format_version,param,metric,mean,std,leaky_ceiling,status,message\n";
    for (const auto& r : rows) {
        out += std::to_string(kSweepFormatVersion) + ',' + tabular::format_number(r.param) + ',' + csv_field(r.metric) +
               ',' + optional_number(r.mean) + ',' + optional_number(r.std) + ',' + optional_number(r.leaky_ceiling) +
               ',' + r.status + ',' + csv_field(r.message) + '\n';
    }
    return out;
}

Json cmd_compare(const std::vector<std::filesystem::path>& reports, ClipOrder order) {
    // metric -> key -> mean score
    std::map<std::string, std::map<std::string, double>> table;
    for (const auto& path : reports) {
        Json j;
        try {
            j = Json::parse(read_text_file(path));
        } catch (const Json::exception& e) {
            throw ValidationError("cannot parse report '" + path.string() + "': " + e.what());
        }
        for (const char* field : {"metric", "generator", "dataset", "scores", "mean"})
            if (!j.contains(field)) throw ValidationError("report '" + path.string() + "' lacks the '" + field + "' field");
        const std::string metric = j["metric"].get<std::string>();
        const std::string key = j["dataset"]["hash"].get<std::string>() + "|" + j["generator"].get<std::string>();
        double value = 0.0;
        if (order == ClipOrder::after_mean) {
            value = std::max(j["mean"].get<double>(), 0.5);
        } else {
            const auto clipped = stats::clip_scores(j["scores"].get<std::vector<double>>());
            value = stats::mean(clipped);
        }
        if (!table[metric].emplace(key, value).second)
            throw ValidationError("two " + metric + " reports share the key " + key);
    }
    if (table.size() < 2) throw ValidationError("compare needs reports of at least two metrics");

    std::vector<std::string> metrics, keys;
    for (const auto& [m, by_key] : table) metrics.push_back(m);
    for (const auto& [k, v] : table.begin()->second) keys.push_back(k);
    for (const auto& [m, by_key] : table) {
        std::vector<std::string> these;
        for (const auto& [k, v] : by_key) these.push_back(k);
        if (these != keys)
            throw ValidationError("metric '" + m + "' covers a different (dataset, generator) key set than '" + metrics.front() + "'");
    }
    if (keys.size() < 3) throw ValidationError("compare needs at least 3 (dataset, generator) keys per metric");

    Json values = Json::object();
    std::map<std::string, std::vector<double>> vec;
    for (const auto& m : metrics) {
        for (const auto& k : keys) vec[m].push_back(table[m][k]);
        values[m] = vec[m];
    }
    Json matrix = Json::array(), errors = Json::array(), counts = Json::array();
    for (const auto& a : metrics) {
        Json mrow = Json::array(), erow = Json::array(), crow = Json::array();
        for (const auto& b : metrics) {
            crow.push_back(keys.size());
            try {
                mrow.push_back(stats::spearman(vec[a], vec[b]));
                erow.push_back(nullptr);
            } catch (const ValidationError& e) {
                mrow.push_back(nullptr);
                erow.push_back(e.what());
            }
        }
        matrix.push_back(mrow);
        errors.push_back(erow);
        counts.push_back(crow);
    }
    return {{"format_version", kReportFormatVersion},
            {"clip_order", order == ClipOrder::after_mean ? "after" : "before"},
            {"clip_floor", 0.5},
            {"metrics", metrics},
            {"keys", keys},
            {"values", values},
            {"spearman", matrix},
            {"counts", counts},
            {"errors", errors}};
}

std::string summary_line(const Json& report) {
    std::ostringstream os;
    os << report["metric"].get<std::string>() << " generator=" << report["generator"].get<std::string>()
       << " mean=" << tabular::format_number(report["mean"].get<double>())
       << " std=" << tabular::format_number(report["std"].get<double>());
    if (report.contains("significance") && !report["significance"].is_null()) {
        const auto& s = report["significance"];
        os << " p=" << tabular::format_number(s["p_value"].get<double>())
           << " significant=" << (s["significant"].get<bool>() ? "yes" : "no");
    }
    if (report.contains("ml_efficacy"))
        os << " ml_efficacy=" << tabular::format_number(report["ml_efficacy"]["mean"].get<double>());
    os << " records_used=" << report["records_used"].get<std::size_t>();
    if (report.contains("flags") && report["flags"].value("threshold_not_reached", false)) os << " [threshold_not_reached]";
    return os.str();
}

std::vector<std::size_t> parse_hidden_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    if (text.empty() || text == "none") return out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const double v = parse_real(part, "hidden layer size");
        if (v < 1 || v != std::floor(v)) throw ValidationError("hidden layer sizes must be positive integers, got '" + part + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

/// Empty text gives an empty grid; an empty entry between commas is an error.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text + ",");
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(parse_real(part, "grid value"));
    return out;
}

}  // namespace synthaudit::cli
