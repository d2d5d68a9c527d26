#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "synthaudit/cli/app.hpp"
#include "synthaudit/cli/commands.hpp"
#include "synthaudit/cli/generator_flag.hpp"
#include "synthaudit/cli/report.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/tabular/csv.hpp"
#include "synthaudit/tabular/toy_data.hpp"

using namespace synthaudit;
using namespace synthaudit::cli;
namespace fs = std::filesystem;

namespace {

/// Scratch directory holding a toy dataset, removed at scope exit.
struct Workspace {
    fs::path dir;
    fs::path data, schema, control;

    explicit Workspace(const std::string& name, std::size_t rows = 120) {
        dir = fs::temp_directory_path() / ("synthaudit-cli-" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        data = dir / "data.csv";
        schema = dir / "schema.json";
        control = dir / "control.csv";
        const auto t = tabular::make_mixture_table(rows, 1);
        tabular::write_csv(t, data);
        tabular::save_schema(t.schema(), schema);
        tabular::write_csv(tabular::make_mixture_table(rows, 2), control);
    }
    ~Workspace() { fs::remove_all(dir); }

    AuditOptions options() const {
        AuditOptions o;
        o.data = data;
        o.schema = schema;
        o.reps = 2;
        o.seed = 3;
        o.mlp.hidden_sizes = {16};
        o.mlp.max_epochs = 20;
        return o;
    }
};

int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "audit");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

Json without_timing(Json j) {
    j.erase("wall_seconds");
    return j;
}

void write_report(const fs::path& p, const std::string& metric, const std::string& hash, const std::string& gen,
                  std::vector<double> scores) {
    double mean = 0;
    for (double s : scores) mean += s / static_cast<double>(scores.size());
    Json j = {{"metric", metric}, {"generator", gen}, {"dataset", {{"hash", hash}}}, {"scores", scores}, {"mean", mean}};
    std::ofstream(p) << j.dump();
}

}  // namespace

TEST_CASE("generator flag parsing") {
    GeneratorContext ctx;
    CHECK(std::holds_alternative<generators::Identity>(parse_generator_flag("builtin:identity", ctx)));
    CHECK(std::holds_alternative<generators::IndependentMarginals>(
        parse_generator_flag("builtin:independent_marginals", ctx)));
    const auto anon = parse_generator_flag("risk:anonymizer:alpha=0.25", ctx);
    REQUIRE(std::holds_alternative<generators::Anonymizer>(anon));
    CHECK(std::get<generators::Anonymizer>(anon).alpha == 0.25);
    CHECK_THROWS_AS(parse_generator_flag("risk:leaky:p=0.5", ctx), ValidationError);
    ctx.leaky_control = std::make_shared<tabular::Table>(tabular::make_mixture_table(5, 1));
    const auto leaky = parse_generator_flag("risk:leaky:p=0.5", ctx);
    REQUIRE(std::holds_alternative<generators::Leaky>(leaky));
    CHECK(std::get<generators::Leaky>(leaky).p == 0.5);
    ctx.timeout = std::chrono::seconds(7);
    const auto ext = parse_generator_flag("exec:gen --out {out} --n {size}", ctx);
    REQUIRE(std::holds_alternative<generators::External>(ext));
    CHECK(std::get<generators::External>(ext).command_template == "gen --out {out} --n {size}");
    CHECK(std::get<generators::External>(ext).timeout == std::chrono::seconds(7));

    for (const char* bad : {"builtin:ctgan", "risk:leaky:p=1.5", "risk:anonymizer:alpha=-0.1", "risk:anonymizer:a=0.1",
                            "risk:anonymizer:alpha=0.1x", "exec:gen {train}", "exec:", "", "identity"})
        CHECK_THROWS_AS(parse_generator_flag(bad, ctx), ValidationError);
}

TEST_CASE("number and list parsing") {
    CHECK(parse_real("0.5", "x") == 0.5);
    CHECK(parse_real("1e-3", "x") == 1e-3);
    CHECK_THROWS_AS(parse_real("0.5 ", "x"), ValidationError);
    CHECK_THROWS_AS(parse_real("", "x"), ValidationError);
    CHECK(parse_hidden_sizes("100,50") == std::vector<std::size_t>{100, 50});
    CHECK(parse_hidden_sizes("none").empty());
    CHECK_THROWS_AS(parse_hidden_sizes("10,0"), ValidationError);
    CHECK_THROWS_AS(parse_hidden_sizes("1.5"), ValidationError);
    CHECK(parse_grid("0,0.25,1") == std::vector<double>{0, 0.25, 1});
    CHECK(parse_grid("").empty());
    CHECK_THROWS_AS(parse_grid("0,"), ValidationError);
    CHECK_THROWS_AS(parse_grid("0,,1"), ValidationError);
}

TEST_CASE("dcr report contents and determinism") {
    Workspace ws("dcr");
    auto opt = ws.options();
    opt.generator = "builtin:identity";
    const Json a = cmd_dcr(opt);
    CHECK(a["format_version"] == kReportFormatVersion);
    CHECK(a["metric"] == "dcr");
    CHECK(a["generator"] == "builtin:identity");
    CHECK(a["dataset"]["rows"] == 120);
    CHECK(a["dataset"]["hash"].is_string());
    CHECK(a["scores"].size() == 2);
    CHECK(a["seeds"] == Json::array({3, 4}));
    CHECK(a.contains("significance"));
    CHECK(a.contains("wall_seconds"));
    CHECK(a["mean"].get<double>() == 1.0);  // identity copies every training row
    CHECK(without_timing(cmd_dcr(opt)).dump() == without_timing(a).dump());
    opt.jobs = 2;
    CHECK(cmd_dcr(opt)["scores"] == a["scores"]);
}

TEST_CASE("report validation errors") {
    Workspace ws("errors");
    auto opt = ws.options();
    CHECK_THROWS_AS(cmd_dcr(opt), ValidationError);  // no generator
    opt.generator = "builtin:identity";
    opt.synth = ws.data;
    CHECK_THROWS_AS(cmd_dcr(opt), ValidationError);
    opt.synth.clear();
    opt.reps = 0;
    CHECK_THROWS_AS(cmd_dcr(opt), ValidationError);
    opt.reps = 1;
    opt.target_fraction = 1.5;
    CHECK_THROWS_AS(cmd_remia(opt), ValidationError);
    opt.target_fraction = 1.0;
    opt.data = ws.dir / "missing.csv";
    CHECK_THROWS_AS(cmd_dcr(opt), ValidationError);
}

TEST_CASE("sweep rows and csv") {
    Workspace ws("sweep");
    auto opt = ws.options();
    opt.leaky_control = ws.control;
    const auto rows = cmd_sweep("dcr", "leaky", {0.0, 0.5, 1.0}, opt);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.status == "ok");
        CHECK(r.leaky_ceiling == doctest::Approx((1 + r.param) / 2));
    }
    CHECK(*rows[0].mean <= *rows[2].mean);
    const auto anon = cmd_sweep("dcr", "anonymizer", {0.0, 1.0}, opt);
    CHECK_FALSE(anon[0].leaky_ceiling.has_value());

    const std::string csv = sweep_csv(rows);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "format_version,param,metric,mean,std,leaky_ceiling,status,message");
    int n = 0;
    while (std::getline(in, line)) ++n;
    CHECK(n == 3);

    CHECK_THROWS_AS(cmd_sweep("dcr", "leaky", {}, opt), ValidationError);
    CHECK_THROWS_AS(cmd_sweep("dcr", "leaky", {1.2}, opt), ValidationError);
    CHECK_THROWS_AS(cmd_sweep("smmia", "leaky", {0.5}, opt), ValidationError);
    opt.leaky_control.clear();
    CHECK_THROWS_AS(cmd_sweep("dcr", "leaky", {0.5}, opt), ValidationError);

    // a control pool too small for the synthetic size fails every point but keeps every row
    tabular::write_csv(tabular::make_mixture_table(10, 9), ws.dir / "tiny.csv");
    opt.leaky_control = ws.dir / "tiny.csv";
    const auto failed = cmd_sweep("dcr", "leaky", {0.0, 1.0}, opt);
    REQUIRE(failed.size() == 2);
    for (const auto& r : failed) {
        CHECK(r.status == "failed");
        CHECK_FALSE(r.message.empty());
        CHECK_FALSE(r.mean.has_value());
    }
    const std::string fcsv = sweep_csv(failed);
    CHECK(fcsv.find(",failed,") != std::string::npos);
}

TEST_CASE("compare") {
    Workspace ws("compare");
    auto p = [&](const std::string& n) { return ws.dir / n; };
    const std::vector<std::string> keys{"h1", "h2", "h3", "h4"};
    const std::vector<double> a{0.6, 0.9, 0.7, 0.8}, b{0.55, 0.95, 0.65, 0.75}, c{0.9, 0.6, 0.8, 0.7};
    std::vector<fs::path> paths;
    for (std::size_t i = 0; i < 4; ++i) {
        write_report(p("a" + std::to_string(i)), "remia", keys[i], "g", {a[i]});
        write_report(p("b" + std::to_string(i)), "domias", keys[i], "g", {b[i]});
        write_report(p("c" + std::to_string(i)), "dcr", keys[i], "g", {c[i]});
        for (char m : {'a', 'b', 'c'}) paths.push_back(p(std::string(1, m) + std::to_string(i)));
    }
    const Json out = cmd_compare(paths, ClipOrder::after_mean);
    const auto metrics = out["metrics"].get<std::vector<std::string>>();
    auto idx = [&](const std::string& m) { return std::find(metrics.begin(), metrics.end(), m) - metrics.begin(); };
    CHECK(out["spearman"][idx("remia")][idx("domias")].get<double>() == doctest::Approx(1.0));
    CHECK(out["spearman"][idx("remia")][idx("dcr")].get<double>() == doctest::Approx(-1.0));
    CHECK(out["counts"][0][1] == 4);

    // hand-computed: ranks (1,4,2,3) vs (2,4,1,3) -> rho = 1 - 6*2/(4*15) = 0.8
    write_report(p("b0"), "domias", "h1", "g", {0.7});
    write_report(p("b2"), "domias", "h3", "g", {0.6});
    CHECK(cmd_compare(paths, ClipOrder::after_mean)["spearman"][idx("remia")][idx("domias")].get<double>() ==
          doctest::Approx(0.8));

    // everything at or below 0.5 after clipping has no variance
    for (std::size_t i = 0; i < 4; ++i) write_report(p("c" + std::to_string(i)), "dcr", keys[i], "g", {0.3 + 0.05 * i});
    const Json flat = cmd_compare(paths, ClipOrder::after_mean);
    CHECK(flat["spearman"][idx("remia")][idx("dcr")].is_null());
    CHECK(flat["errors"][idx("remia")][idx("dcr")].is_string());
    CHECK(flat["errors"][idx("remia")][idx("domias")].is_null());

    // clipping order matters when repetitions straddle 0.5
    write_report(p("c0"), "dcr", "h1", "g", {0.2, 0.9});  // after: 0.55, before: 0.7
    const Json after = cmd_compare(paths, ClipOrder::after_mean), before = cmd_compare(paths, ClipOrder::before_mean);
    CHECK(after["values"]["dcr"][0].get<double>() == doctest::Approx(0.55));
    CHECK(before["values"]["dcr"][0].get<double>() == doctest::Approx(0.7));

    write_report(p("extra"), "dcr", "h9", "g", {0.6});
    auto with_extra = paths;
    with_extra.push_back(p("extra"));
    CHECK_THROWS_AS(cmd_compare(with_extra, ClipOrder::after_mean), ValidationError);
    auto dup = paths;
    dup.push_back(p("a0"));
    CHECK_THROWS_AS(cmd_compare(dup, ClipOrder::after_mean), ValidationError);
    CHECK_THROWS_AS(cmd_compare({p("a0"), p("a1"), p("a2")}, ClipOrder::after_mean), ValidationError);
}

TEST_CASE("exit codes") {
    Workspace ws("exit");
    const std::string data = ws.data.string(), schema = ws.schema.string(), out = (ws.dir / "r.json").string();
    const std::vector<std::string> small{"--reps", "1"};
    auto with = [&](std::vector<std::string> args) {
        args.insert(args.end(), small.begin(), small.end());
        return invoke(args);
    };
    CHECK(invoke({"--help"}) == kExitOk);
    CHECK(with({"dcr", "--data", data, "--schema", schema, "--generator", "builtin:identity", "--out", out}) == kExitOk);
    CHECK(fs::exists(out));
    const Json report = Json::parse(read_text_file(out));
    CHECK(report["metric"] == "dcr");
    CHECK(report["config"]["command"].size() > 3);

    CHECK(with({"remia", "--data", data, "--schema", schema, "--generator", "builtin:identity", "--target-fraction",
                "1.5", "--hidden", "8", "--epochs", "10", "--out", out}) == kExitValidation);
    CHECK(with({"dcr", "--data", data, "--schema", schema, "--generator", "builtin:nope", "--out", out}) ==
          kExitValidation);
    CHECK(with({"dcr", "--data", data, "--schema", schema, "--generator", "exec:exit 3 # {out}", "--out", out}) ==
          kExitGenerator);
    CHECK(with({"dcr", "--data", data, "--schema", schema, "--generator", "exec:cp {train} {out}", "--out", out}) ==
          kExitOk);
    CHECK(invoke({"dcr", "--data", data}) == kExitValidation);
    CHECK(invoke({"frobnicate"}) == kExitValidation);
    CHECK(invoke({"sweep", "--data", data, "--schema", schema, "--family", "anonymizer", "--grid", "", "--out", out}) ==
          kExitValidation);
    CHECK(invoke({"toy-data", "--kind", "independent", "--rows", "30", "--out", (ws.dir / "t.csv").string(),
                  "--schema-out", (ws.dir / "t.json").string()}) == kExitOk);
    CHECK(tabular::load_table(ws.dir / "t.csv", ws.dir / "t.json").num_rows() == 30);
}
