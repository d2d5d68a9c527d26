#include "synthaudit/cli/generator_flag.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "synthaudit/error.hpp"
#include "synthaudit/generators/external.hpp"

namespace synthaudit::cli {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

double unit_interval(std::string_view text, std::string_view what) {
    const double v = parse_real(text, what);
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1], got " + std::string(text));
    return v;
}

}  // namespace

double parse_real(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(text) + "' as a number");
    return v;
}

generators::GeneratorSpec parse_generator_flag(std::string_view text, const GeneratorContext& ctx) {
    if (text == "builtin:independent_marginals") return generators::IndependentMarginals{};
    if (text == "builtin:identity") return generators::Identity{};
    if (starts_with(text, "risk:leaky:p=")) {
        const double p = unit_interval(text.substr(13), "leak fraction p");
        if (!ctx.leaky_control) throw ValidationError("risk:leaky needs a control table (--leaky-control)");
        return generators::Leaky{p, ctx.leaky_control};
    }
    if (starts_with(text, "risk:anonymizer:alpha=")) return generators::Anonymizer{unit_interval(text.substr(22), "noise level alpha")};
    if (starts_with(text, "exec:")) {
        generators::External ext;
        ext.command_template = std::string(text.substr(5));
        if (ext.command_template.empty()) throw ValidationError("exec: generator needs a command template");
        generators::expand_command(ext.command_template,
                                   {{"train", ""}, {"schema", ""}, {"out", ""}, {"size", ""}, {"seed", ""}});
        ext.timeout = ctx.timeout;
        ext.workdir_root = ctx.workdir_root;
        return ext;
    }
    throw ValidationError("unknown generator '" + std::string(text) +
                          "' (expected builtin:independent_marginals, builtin:identity, risk:leaky:p=<v>, "
                          "risk:anonymizer:alpha=<v> or exec:<command>)");
}

}  // namespace synthaudit::cli
