#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>

#include "hyperlevy/errors.hpp"
#include "hyperlevy/io.hpp"
#include "hyperlevy/kernels.hpp"
#include "hyperlevy/levy_model.hpp"
#include "hyperlevy/regime.hpp"
#include "hyperlevy/sampler.hpp"
#include "hyperlevy/specfun.hpp"
#include "hyperlevy/spectral.hpp"
#include "hyperlevy/version.hpp"

namespace hyperlevy::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Context {
    std::vector<std::string> argv;  // canonical arguments, output location stripped
    std::string out_dir;
    std::string output;             // file name override, may be empty
    bool parallel = false;
    AccuracyPolicy policy;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;

    kernels::Exec exec() const { return parallel ? kernels::Exec::openmp : kernels::Exec::serial; }
};

// --------------------------------------------------------------------------
// argument parsing helpers

long parse_int(const std::string& s, const char* what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw DomainError(std::string(what) + ": expected an integer, got '" + s + "'");
    return v;
}

double parse_real(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw DomainError(std::string(what) + ": expected a number, got '" + s + "'");
    return v;
}

MeasureSpec parse_measure(const std::vector<std::string>& t) {
    if (t.empty()) throw DomainError("missing measure: use hyperbolic D K | pair D K | rescaled D K | limit_b B");
    MeasureSpec spec;
    const std::string& kind = t[0];
    if (kind == "hyperbolic" || kind == "pair" || kind == "rescaled") {
        if (t.size() != 3) throw DomainError(kind + " expects two integers D K");
        spec.kind = kind == "rescaled" ? MeasureKind::rescaled : MeasureKind::hyperbolic;
        spec.d = int(parse_int(t[1], "D"));
        spec.k = int(parse_int(t[2], "K"));
        DimensionPair check(spec.d, spec.k);
        spec.b = check.codim();
        return spec;
    }
    if (kind == "limit_b") {
        if (t.size() != 2) throw DomainError("limit_b expects one integer B");
        spec.kind = MeasureKind::limit_b;
        spec.b = int(parse_int(t[1], "B"));
        if (spec.b < 1) throw DomainError("limit_b requires B >= 1");
        return spec;
    }
    throw DomainError("unknown measure kind '" + kind + "'");
}

std::string measure_slug(const MeasureSpec& s) {
    switch (s.kind) {
        case MeasureKind::hyperbolic:
            return "hyperbolic_" + std::to_string(s.d) + "_" + std::to_string(s.k);
        case MeasureKind::rescaled:
            return "rescaled_" + std::to_string(s.d) + "_" + std::to_string(s.k);
        case MeasureKind::limit_b:
            return "limit_b_" + std::to_string(s.b);
    }
    return "measure";
}

struct FamilyOptions {
    int d_step = 4;
    std::string rounding = "ceil";
};

regime::SequenceFamily parse_family(const std::vector<std::string>& t, const FamilyOptions& opt) {
    if (t.empty()) throw DomainError("missing family: use remark GAMMA BETA | fixed_codim B | explicit D:K ...");
    const std::string& kind = t[0];
    if (kind == "remark") {
        if (t.size() != 3) throw DomainError("remark expects GAMMA BETA");
        if (opt.rounding != "ceil" && opt.rounding != "floor") throw DomainError("--rounding must be ceil or floor");
        return regime::SequenceFamily::remark(parse_real(t[1], "GAMMA"), parse_real(t[2], "BETA"), opt.d_step,
                                              opt.rounding == "ceil" ? regime::Rounding::ceil_up
                                                                     : regime::Rounding::floor_up);
    }
    if (kind == "fixed_codim") {
        if (t.size() != 2) throw DomainError("fixed_codim expects B");
        return regime::SequenceFamily::fixed_codim(int(parse_int(t[1], "B")));
    }
    if (kind == "explicit") {
        std::vector<DimensionPair> pairs;
        for (std::size_t i = 1; i < t.size(); ++i) {
            std::stringstream ss(t[i]);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) throw DomainError("explicit pairs are written D:K, got '" + item + "'");
                pairs.emplace_back(int(parse_int(item.substr(0, colon), "D")), int(parse_int(item.substr(colon + 1), "K")));
            }
        }
        return regime::SequenceFamily::explicit_list(std::move(pairs));
    }
    throw DomainError("unknown family kind '" + kind + "'");
}

std::vector<long> parse_range(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw DomainError("--n-range expects FIRST:LAST[:STEP]");
    const long first = parse_int(parts[0], "FIRST");
    const long last = parse_int(parts[1], "LAST");
    const long step = parts.size() == 3 ? parse_int(parts[2], "STEP") : 1;
    if (step < 1 || first < 1 || last < first) throw DomainError("--n-range needs 1 <= FIRST <= LAST and STEP >= 1");
    std::vector<long> out;
    for (long n = first; n <= last; n += step) out.push_back(n);
    return out;
}

// --------------------------------------------------------------------------
// output helpers

json accuracy_json(const AccuracyPolicy& p) {
    return {{"rel_tol", p.rel_tol}, {"abs_tol", p.abs_tol}, {"max_iter", p.max_iter}};
}

json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json snapshot(const Context& ctx, const std::string& command, const std::string& output, json params) {
    return {{"argv", ctx.argv},
            {"command", command},
            {"params", std::move(params)},
            {"output", output},
            {"accuracy", accuracy_json(ctx.policy)},
            {"version", kVersion},
            {"format_version", kFormatVersion}};
}

std::string output_path(const Context& ctx, const std::string& name) {
    fs::create_directories(ctx.out_dir.empty() ? fs::path(".") : fs::path(ctx.out_dir));
    return (fs::path(ctx.out_dir.empty() ? "." : ctx.out_dir) / name).string();
}

std::string stem_of(const std::string& name) { return fs::path(name).stem().string(); }

std::vector<std::string> csv_header(const json& config, std::vector<std::string> extra = {}) {
    std::vector<std::string> c = {std::string("hyperlevy ") + kVersion + " format " + std::to_string(kFormatVersion),
                                  "config: " + config.dump(), "created: " + io::timestamp_utc()};
    for (auto& e : extra) c.push_back(std::move(e));
    return c;
}

void write_json(const std::string& path, json body, const json& config) {
    body["config"] = config;
    body["created"] = io::timestamp_utc();
    io::write_file(path, body.dump(2) + "\n");
}

// --------------------------------------------------------------------------
// commands

int cmd_sigma2(const Context& ctx, int d, int k) {
    const DimensionPair pair(d, k);
    const double s2 = sigma2(pair);
    const auto measure = LevyMeasure1D::hyperbolic(pair);
    const double quad = measure.integrate_power<double>(2, [](double) { return 1.0; }, 0.0, 1.0, ctx.policy).value;
    const double rel = std::fabs(quad - s2) / s2;
    const std::string name = ctx.output.empty() ? "sigma2_" + std::to_string(d) + "_" + std::to_string(k) + ".json"
                                                : ctx.output;
    const json config = snapshot(ctx, "sigma2", name, {{"d", d}, {"k", k}});
    write_json(output_path(ctx, name),
               {{"d", d}, {"k", k}, {"r", pair.r()}, {"codim", pair.codim()}, {"sigma2", s2},
                {"sigma", std::sqrt(s2)}, {"quadrature", quad}, {"rel_discrepancy", rel}},
               config);
    auto& out = *ctx.out;
    out << "sigma2 = " << io::format_double(s2) << "\n"
        << "sigma = " << io::format_double(std::sqrt(s2)) << "\n"
        << "quadrature = " << io::format_double(quad) << "\n"
        << "rel_discrepancy = " << io::format_double(rel) << "\n";
    return kOk;
}

int cmd_cumulants(const Context& ctx, const std::vector<std::string>& spec_tokens, int max_order) {
    if (max_order < 2) throw DomainError("--max must be >= 2");
    const MeasureSpec spec = parse_measure(spec_tokens);
    const auto measure = make_measure(spec);
    io::Table table;
    table.columns = {"order", "closed_form", "quadrature", "rel_err"};
    for (int m = 2; m <= max_order; ++m) {
        const double closed = measure.moment(m);
        const double quad = measure.integrate_power<double>(m, [](double) { return 1.0; }, 0.0, 1.0, ctx.policy).value;
        table.rows.push_back({double(m), closed, quad, std::fabs(quad - closed) / closed});
    }
    const std::string name = ctx.output.empty() ? "cumulants_" + measure_slug(spec) + ".csv" : ctx.output;
    const json config =
        snapshot(ctx, "cumulants", name, {{"measure", spec.describe()}, {"max_order", max_order}});
    table.comments = csv_header(config);
    io::write_csv(output_path(ctx, name), table);
    io::write_csv(*ctx.out, {{}, table.columns, table.rows});
    return kOk;
}

int cmd_density(const Context& ctx, const std::vector<std::string>& tokens, std::size_t points, double half_width) {
    if (!tokens.empty() && tokens[0] == "levy") {
        const MeasureSpec spec = parse_measure({tokens.begin() + 1, tokens.end()});
        const auto measure = make_measure(spec);
        const auto grid = spectral::tabulate_levy_density(measure, points);
        io::Table table;
        table.columns = {"x", "nu"};
        for (std::size_t i = 0; i < grid.size(); ++i) table.rows.push_back({grid.x(i), grid.values[i]});
        const std::string name = ctx.output.empty() ? "levy_density_" + measure_slug(spec) + ".csv" : ctx.output;
        const json config =
            snapshot(ctx, "density", name, {{"mode", "levy"}, {"measure", spec.describe()}, {"points", points}});
        table.comments = csv_header(config);
        io::write_csv(output_path(ctx, name), table);
        *ctx.out << "wrote " << grid.size() << " Levy density values to " << name << "\n";
        return kOk;
    }
    const MeasureSpec spec = parse_measure(tokens);
    const auto measure = make_measure(spec);
    spectral::GridSpec gs;
    gs.n_points = points;
    gs.half_width = half_width;
    spectral::InversionOptions opt;
    opt.exec = ctx.exec();
    const auto grid = spectral::invert_to_density(measure, gs, opt, ctx.policy);

    io::Table table;
    table.columns = {"x", "pdf"};
    for (std::size_t i = 0; i < grid.size(); ++i) table.rows.push_back({grid.x(i), grid.values[i]});
    const std::string name = ctx.output.empty() ? "density_" + measure_slug(spec) + ".csv" : ctx.output;
    const json config = snapshot(ctx, "density", name,
                                 {{"mode", "law"}, {"measure", spec.describe()}, {"points", points},
                                  {"half_width_sd", half_width}});
    table.comments = csv_header(config);
    io::write_csv(output_path(ctx, name), table);

    const auto& m = grid.meta;
    const json moments = {{"mass", m.mass},
                          {"mean", m.mean},
                          {"variance", m.variance},
                          {"kappa3", m.kappa3()},
                          {"kappa4", m.kappa4()},
                          {"clipped_mass", m.clipped_mass},
                          {"min_before_clip", m.min_before_clip},
                          {"t_max", m.t_max},
                          {"cf_points", m.cf_points},
                          {"abs_cf_at_cutoff", m.abs_cf_at_cutoff},
                          {"x0", grid.x0},
                          {"step", grid.step},
                          {"n_points", grid.size()}};
    write_json(output_path(ctx, stem_of(name) + ".json"), {{"moments", moments}}, config);
    *ctx.out << "mass = " << io::format_double(m.mass) << "\nmean = " << io::format_double(m.mean)
             << "\nvariance = " << io::format_double(m.variance) << "\nkappa3 = " << io::format_double(m.kappa3())
             << "\nkappa4 = " << io::format_double(m.kappa4()) << "\n";
    return kOk;
}

json verdict_json(const regime::RegimeVerdict& v) {
    return {{"label", regime::to_string(v.label)},
            {"threshold_limit", finite_or_string(v.threshold_limit)},
            {"threshold_lower", finite_or_string(v.threshold_lower)},
            {"threshold_upper", finite_or_string(v.threshold_upper)},
            {"rationale", v.rationale}};
}

int cmd_jprobe(const Context& ctx, const std::vector<std::string>& tokens, const FamilyOptions& fo,
               std::vector<long> n_grid, const std::string& n_range, std::vector<double> eps) {
    const auto family = parse_family(tokens, fo);
    if (!n_range.empty()) n_grid = parse_range(n_range);
    if (n_grid.empty()) {
        const long first = family.kind() == regime::SequenceFamily::Kind::explicit_list ? 1 : family.first_admissible();
        if (first == 0) throw DomainError("family has no admissible member");
        const long last = family.kind() == regime::SequenceFamily::Kind::explicit_list
                              ? long(family.pairs().size())
                              : first + 99;
        for (long n = first; n <= last; ++n) n_grid.push_back(n);
    }
    if (eps.empty()) eps = {0.1, 0.5};
    const auto table = regime::probe_regime(family, n_grid, eps, ctx.policy, ctx.exec());

    io::Table csv;
    csv.columns = {"n", "d", "k", "r", "sigma", "threshold_stat", "epsilon", "j"};
    for (const auto& r : table.rows) {
        csv.rows.push_back({double(r.n), double(r.d), double(r.k), double(r.r), r.sigma, r.threshold, r.eps, r.j});
    }
    const std::string name = ctx.output.empty() ? "jprobe.csv" : ctx.output;
    const json config = snapshot(ctx, "jprobe", name,
                                 {{"family", family.describe()}, {"n", n_grid}, {"eps", eps}});
    csv.comments = csv_header(config, {"verdict: " + verdict_json(table.verdict).dump()});
    io::write_csv(output_path(ctx, name), csv);
    *ctx.out << "family: " << family.describe() << "\nverdict: " << regime::to_string(table.verdict.label) << " ("
             << table.verdict.rationale << ")\nrows: " << csv.rows.size() << "\n";
    return kOk;
}

int cmd_classify(const Context& ctx, const std::vector<std::string>& tokens, const FamilyOptions& fo, double margin) {
    const auto family = parse_family(tokens, fo);
    regime::ClassifyOptions opt;
    opt.margin = margin;
    const auto v = regime::classify_sequence(family, opt);
    json body = verdict_json(v);
    body["family"] = family.describe();
    const std::string name = ctx.output.empty() ? "classify.json" : ctx.output;
    const json config = snapshot(ctx, "classify", name, {{"family", family.describe()}, {"margin", margin}});
    write_json(output_path(ctx, name), body, config);
    *ctx.out << verdict_json(v).dump() << "\n";
    return kOk;
}

struct SampleArgs {
    std::size_t n = 100000;
    std::uint64_t seed = 0;
    double delta = 1e-3;
    std::size_t batch_size = 4096;
    std::size_t knots = 4096;
    double min_sigma_ratio = 10.0;
};

int cmd_sample(const Context& ctx, const std::vector<std::string>& tokens, const SampleArgs& a) {
    const MeasureSpec spec = parse_measure(tokens);
    const auto measure = make_measure(spec);
    sampler::SamplerConfig cfg;
    cfg.delta = a.delta;
    cfg.seed = a.seed;
    cfg.batch_size = a.batch_size;
    cfg.table_knots = a.knots;
    cfg.min_sigma_ratio = a.min_sigma_ratio;
    cfg.exec = ctx.exec();
    const auto batch = sampler::sample(measure, cfg, a.n, ctx.policy);
    for (const auto& w : batch.diagnostics.warnings) *ctx.err << "warning: " << w << "\n";

    const std::string name = ctx.output.empty() ? "sample_" + measure_slug(spec) + ".txt" : ctx.output;
    const json config = snapshot(ctx, "sample", name,
                                 {{"measure", spec.describe()},
                                  {"n", a.n},
                                  {"seed", a.seed},
                                  {"delta", a.delta},
                                  {"batch_size", a.batch_size},
                                  {"table_knots", a.knots},
                                  {"min_sigma_ratio", a.min_sigma_ratio}});
    io::write_values(output_path(ctx, name), batch.values);

    const auto& d = batch.diagnostics;
    json empirical;
    double mean = 0.0;
    for (double v : batch.values) mean += v;
    mean /= double(batch.values.size());
    empirical["mean"] = mean;
    if (batch.values.size() > 4) {
        const auto k = sampler::empirical_cumulants(batch, 4);
        empirical["variance"] = k[0];
        empirical["kappa3"] = k[1];
        empirical["kappa4"] = k[2];
    }
    const json diag = {{"jump_rate", d.jump_rate},
                       {"small_jump_var", d.small_jump_var},
                       {"compensator", d.compensator},
                       {"large_jump_m2", d.large_jump_m2},
                       {"total_second_moment", d.total_second_moment},
                       {"sigma_ratio", d.sigma_ratio},
                       {"sub_batches", d.sub_batches},
                       {"warnings", d.warnings}};
    write_json(output_path(ctx, stem_of(name) + ".json"), {{"diagnostics", diag}, {"empirical", empirical}}, config);
    *ctx.out << "wrote " << batch.values.size() << " values to " << name << "\n" << empirical.dump() << "\n";
    return kOk;
}

int cmd_specfun(const Context& ctx, const std::vector<std::string>& t) {
    if (t.empty()) throw DomainError("specfun needs a function name");
    const std::string& f = t[0];
    std::vector<double> x;
    for (std::size_t i = 1; i < t.size(); ++i) x.push_back(parse_real(t[i], "argument"));
    auto need = [&](std::size_t n) {
        if (x.size() != n) throw DomainError(f + " expects " + std::to_string(n) + " arguments");
    };
    json result;
    if (f == "log_gamma") {
        need(1);
        result["value"] = specfun::log_gamma(x[0]);
    } else if (f == "beta") {
        need(2);
        result["value"] = specfun::beta(x[0], x[1]);
    } else if (f == "reg_inc_beta") {
        need(3);
        result["value"] = specfun::reg_inc_beta(x[0], x[1], x[2], ctx.policy);
    } else if (f == "inc_beta") {
        need(3);
        result["value"] = specfun::inc_beta(x[0], x[1], x[2], ctx.policy);
    } else if (f == "beta_stats") {
        need(2);
        const auto s = specfun::beta_dist_stats(x[0], x[1]);
        result = {{"mean", s.mean}, {"variance", s.variance}};
    } else if (f == "chebyshev") {
        need(3);
        const auto b = specfun::chebyshev_tail_bound(x[0], x[1], x[2]);
        result = {{"kind", b.kind == specfun::TailSide::below ? "below" : "above"}, {"bound", b.bound}};
    } else if (f == "gamma_bounds") {
        need(2);
        const auto b = specfun::gamma_ratio_bounds(x[0], x[1]);
        result = {{"lower", b.lower}, {"upper", b.upper}};
    } else if (f == "stirling") {
        need(1);
        const auto b = specfun::stirling_bounds(x[0]);
        result = {{"lower", b.lower}, {"upper", b.upper}};
    } else if (f == "wendel") {
        need(2);
        result = {{"lower", specfun::wendel_lower(x[0], x[1])}, {"ratio", specfun::wendel_ratio(x[0], x[1])}};
    } else {
        throw DomainError("unknown specfun '" + f +
                          "' (log_gamma, beta, reg_inc_beta, inc_beta, beta_stats, chebyshev, gamma_bounds, "
                          "stirling, wendel)");
    }
    result["function"] = f;
    result["args"] = x;
    const std::string name = ctx.output.empty() ? "specfun_" + f + ".json" : ctx.output;
    const json config = snapshot(ctx, "specfun", name, {{"function", f}, {"args", x}});
    write_json(output_path(ctx, name), result, config);
    json shown = result;
    for (auto& [key, value] : shown.items()) {
        if (value.is_number_float()) value = io::format_double(value.get<double>());
    }
    *ctx.out << shown.dump() << "\n";
    return kOk;
}

int run_sweep(const Context& ctx, const json& manifest, const std::string& manifest_path);

int dispatch(const std::vector<std::string>& args, Context ctx);

// Splits output location flags off the argument list.
std::vector<std::string> strip_output_flags(const std::vector<std::string>& args, std::string& out_dir,
                                            std::string& output) {
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto take = [&](std::string& dst) {
            if (i + 1 >= args.size()) throw DomainError(a + " needs a value");
            dst = args[++i];
        };
        if (a == "--out") {
            take(out_dir);
        } else if (a.rfind("--out=", 0) == 0) {
            out_dir = a.substr(6);
        } else if (a == "-o" || a == "--output") {
            take(output);
        } else if (a.rfind("--output=", 0) == 0) {
            output = a.substr(9);
        } else {
            rest.push_back(a);
        }
    }
    return rest;
}

json load_snapshot(const std::string& path) {
    const std::string text = io::read_file(path);
    if (!text.empty() && text[0] == '{') {
        const json doc = json::parse(text);
        if (!doc.contains("config")) throw DomainError(path + " has no config snapshot");
        return doc.at("config");
    }
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("# config: ", 0) == 0) return json::parse(line.substr(10));
        if (line.empty() || line[0] != '#') break;
    }
    throw DomainError(path + " has no config snapshot");
}

int cmd_rerun(const Context& ctx, const std::string& path) {
    json config;
    try {
        config = load_snapshot(path);
    } catch (const json::exception& e) {
        throw DomainError("malformed snapshot in " + path + ": " + e.what());
    }
    if (config.value("version", "") != kVersion) {
        *ctx.err << "warning: snapshot written by version " << config.value("version", "?") << ", running "
                 << kVersion << "\n";
    }
    const std::string command = config.at("command").get<std::string>();
    Context next = ctx;
    next.argv = config.at("argv").get<std::vector<std::string>>();
    next.output = config.value("output", "");
    if (command == "sweep") {
        const json acc = config.at("accuracy");
        next.policy.rel_tol = acc.at("rel_tol").get<double>();
        next.policy.abs_tol = acc.at("abs_tol").get<double>();
        next.policy.max_iter = acc.at("max_iter").get<int>();
        next.parallel = std::find(next.argv.begin(), next.argv.end(), "--parallel") != next.argv.end();
        const json params = config.at("params");
        return run_sweep(next, params.at("manifest"), params.value("manifest_path", ""));
    }
    return dispatch(next.argv, next);
}

int run_sweep(const Context& ctx, const json& manifest, const std::string& manifest_path) {
    if (!manifest.is_object() || (manifest.contains("runs") && !manifest.at("runs").is_array())) {
        throw DomainError("sweep manifest must be an object with a \"runs\" array");
    }
    const json runs = manifest.value("runs", json::array());
    const std::regex safe("[A-Za-z0-9_.-]+");
    struct Outcome {
        std::string name;
        int code = 0;
        std::string log;
        std::string error;
    };
    std::vector<Outcome> outcomes(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const json& r = runs[i];
        if (!r.is_object() || !r.contains("name") || !r.contains("args") || !r.at("name").is_string() ||
            !r.at("args").is_array()) {
            throw DomainError("sweep run " + std::to_string(i) + " needs a string \"name\" and an \"args\" array");
        }
        outcomes[i].name = r.at("name").get<std::string>();
        if (!std::regex_match(outcomes[i].name, safe)) {
            throw DomainError("sweep run name '" + outcomes[i].name + "' must match [A-Za-z0-9_.-]+");
        }
    }
    kernels::parallel_for(runs.size(), ctx.exec(), [&](std::size_t i) {
        Outcome& o = outcomes[i];
        std::vector<std::string> args;
        for (const auto& a : runs[i].at("args")) args.push_back(a.is_string() ? a.get<std::string>() : a.dump());
        if (!args.empty() && (args[0] == "sweep" || args[0] == "rerun")) {
            o.code = kInvalidInput;
            o.error = "nested " + args[0] + " is not allowed inside a sweep";
            return;
        }
        std::ostringstream out, err;
        Context sub = ctx;
        sub.out = &out;
        sub.err = &err;
        sub.output.clear();
        sub.parallel = false;
        sub.out_dir = (fs::path(ctx.out_dir.empty() ? "." : ctx.out_dir) / o.name).string();
        std::string dummy_dir, output;
        std::vector<std::string> rest;
        try {
            rest = strip_output_flags(args, dummy_dir, output);
        } catch (const std::exception& e) {
            o.code = kInvalidInput;
            o.error = e.what();
            return;
        }
        sub.output = output;
        sub.argv = rest;
        o.code = dispatch(rest, sub);
        o.log = out.str();
        o.error = err.str();
    });

    json summary_runs = json::array();
    int failed = 0;
    for (const auto& o : outcomes) {
        if (o.code != 0) ++failed;
        summary_runs.push_back({{"name", o.name},
                                {"status", o.code == 0 ? "ok" : "failed"},
                                {"exit_code", o.code},
                                {"error", o.error}});
    }
    const std::string name = ctx.output.empty() ? "summary.json" : ctx.output;
    const json config = snapshot(ctx, "sweep", name, {{"manifest", manifest}, {"manifest_path", manifest_path}});
    write_json(output_path(ctx, name), {{"runs", summary_runs}, {"failed", failed}, {"total", outcomes.size()}},
               config);
    *ctx.out << "sweep: " << outcomes.size() - failed << " of " << outcomes.size() << " runs succeeded\n";
    for (const auto& o : outcomes) {
        if (o.code != 0) *ctx.err << "run " << o.name << " failed (exit " << o.code << "): " << o.error;
    }
    return failed ? kPartialFailure : kOk;
}

int cmd_sweep(const Context& ctx, const std::string& path) {
    json manifest;
    try {
        manifest = json::parse(io::read_file(path));
    } catch (const json::exception& e) {
        throw DomainError("malformed manifest " + path + ": " + e.what());
    }
    return run_sweep(ctx, manifest, path);
}

// Parses `args` (output flags already removed) and runs the command.
int dispatch(const std::vector<std::string>& args, Context ctx) {
    std::ostream& out = *ctx.out;
    std::ostream& err = *ctx.err;

    CLI::App app{"Limit laws of hyperbolic Poisson k-plane processes: moments, regimes, densities, samples", "hyperlevy"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    app.add_flag("--parallel", ctx.parallel, "Run independent units with OpenMP");
    app.add_option("--rel-tol", ctx.policy.rel_tol, "Relative tolerance")->capture_default_str();
    app.add_option("--abs-tol", ctx.policy.abs_tol, "Absolute tolerance")->capture_default_str();
    app.add_option("--max-iter", ctx.policy.max_iter, "Iteration cap")->capture_default_str();
    app.footer("Output: --out DIR (default $HYPERLEVY_OUTPUT_DIR or .), -o NAME for the primary file.\n"
               "Exit codes: 0 ok, 1 partial sweep failure, 2 invalid input, 3 numerical failure.");

    int d = 0, k = 0;
    auto* s_sigma = app.add_subcommand("sigma2", "sigma^2_{d,k} with a quadrature cross-check");
    s_sigma->add_option("d", d)->required();
    s_sigma->add_option("k", k)->required();

    std::vector<std::string> tokens;
    int max_order = 6;
    auto* s_cum = app.add_subcommand("cumulants", "Closed-form cumulants vs quadrature");
    s_cum->add_option("measure", tokens, "pair D K | hyperbolic D K | rescaled D K | limit_b B")->required();
    s_cum->add_option("--max", max_order, "Highest order")->capture_default_str();

    std::size_t points = 16384;
    double half_width = 12.0;
    auto* s_den = app.add_subcommand("density", "Density by Fourier inversion (or `levy ...` for the Levy density)");
    s_den->add_option("measure", tokens, "[levy] hyperbolic D K | rescaled D K | limit_b B")->required();
    s_den->add_option("--points", points, "Grid points")->capture_default_str();
    s_den->add_option("--half-width", half_width, "Half width in standard deviations")->capture_default_str();

    FamilyOptions fo;
    std::vector<long> n_grid;
    std::string n_range;
    std::vector<double> eps;
    auto* s_jp = app.add_subcommand("jprobe", "J(d_n, k_n, eps) along a sequence family");
    s_jp->add_option("family", tokens, "remark GAMMA BETA | fixed_codim B | explicit D:K,...")->required();
    s_jp->add_option("--n", n_grid, "Comma-separated n values")->delimiter(',');
    s_jp->add_option("--n-range", n_range, "FIRST:LAST[:STEP]");
    s_jp->add_option("--eps", eps, "Comma-separated eps values (default 0.1,0.5)")->delimiter(',');
    s_jp->add_option("--d-step", fo.d_step, "remark family: d_n = STEP * n")->capture_default_str();
    s_jp->add_option("--rounding", fo.rounding, "remark family: ceil or floor")->capture_default_str();

    double margin = 0.10;
    auto* s_cl = app.add_subcommand("classify", "Gaussian / degenerate / indeterminate verdict");
    s_cl->add_option("family", tokens, "remark GAMMA BETA | fixed_codim B | explicit D:K,...")->required();
    s_cl->add_option("--d-step", fo.d_step)->capture_default_str();
    s_cl->add_option("--rounding", fo.rounding)->capture_default_str();
    s_cl->add_option("--margin", margin, "Relative margin for finite lists")->capture_default_str();

    SampleArgs sa;
    auto* s_sa = app.add_subcommand("sample", "Monte Carlo sample with a JSON diagnostics sidecar");
    s_sa->add_option("measure", tokens, "hyperbolic D K | rescaled D K | limit_b B")->required();
    s_sa->add_option("-N", sa.n, "Sample size")->capture_default_str();
    s_sa->add_option("--seed", sa.seed, "Seed")->capture_default_str();
    s_sa->add_option("--delta", sa.delta, "Jump cutoff")->capture_default_str();
    s_sa->add_option("--batch-size", sa.batch_size, "Sub-batch size")->capture_default_str();
    s_sa->add_option("--knots", sa.knots, "Quantile table knots")->capture_default_str();
    s_sa->add_option("--min-sigma-ratio", sa.min_sigma_ratio, "Required sigma(delta)/delta")->capture_default_str();

    std::string path;
    auto* s_sw = app.add_subcommand("sweep", "Run a JSON manifest {\"runs\": [{\"name\", \"args\"}]}");
    s_sw->add_option("manifest", path)->required();

    auto* s_sf = app.add_subcommand("specfun", "Special functions and their bounds");
    s_sf->add_option("args", tokens, "FUNCTION ARGS...")->required();

    auto* s_re = app.add_subcommand("rerun", "Re-execute a run from the config snapshot in its output");
    s_re->add_option("file", path)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        ctx.policy.validate();
        if (s_sigma->parsed()) return cmd_sigma2(ctx, d, k);
        if (s_cum->parsed()) return cmd_cumulants(ctx, tokens, max_order);
        if (s_den->parsed()) return cmd_density(ctx, tokens, points, half_width);
        if (s_jp->parsed()) return cmd_jprobe(ctx, tokens, fo, n_grid, n_range, eps);
        if (s_cl->parsed()) return cmd_classify(ctx, tokens, fo, margin);
        if (s_sa->parsed()) return cmd_sample(ctx, tokens, sa);
        if (s_sw->parsed()) return cmd_sweep(ctx, path);
        if (s_sf->parsed()) return cmd_specfun(ctx, tokens);
        if (s_re->parsed()) return cmd_rerun(ctx, path);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
    return kInvalidInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    if (const char* env = std::getenv("HYPERLEVY_OUTPUT_DIR")) ctx.out_dir = env;
    try {
        ctx.argv = strip_output_flags(args, ctx.out_dir, ctx.output);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    return dispatch(ctx.argv, ctx);
}

}  // namespace hyperlevy::cli
