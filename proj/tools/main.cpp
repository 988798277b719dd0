// legfact command-line front end.
//
// Subcommands: primes | factorial | increments | summatory | analyze | perron.
// A JSON config file supplies a full run description; individual flags
// override file values.  Exit codes: 0 success, 1 check or numeric failure,
// 2 configuration error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "legfact/asymptotics.hpp"
#include "legfact/dirichlet.hpp"
#include "legfact/errors.hpp"
#include "legfact/factorial.hpp"
#include "legfact/number_field.hpp"
#include "legfact/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string field = "Q";
    std::vector<std::string> s_exclude; // "p" or "p:one" per entry
    std::string fspec_text = "norm";
    std::optional<legfact::FSpec> fspec_object; // set when the config held an object
    std::int64_t x_max = 100000;
    int samples_count = 40;
    std::int64_t samples_min = 0; // 0 = max(100, x_max / 1000)
    std::vector<double> s_values = {1.5, 2.0, 3.0};
    std::vector<double> epsilons = {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
    double perron_x = 100.5;
    double perron_T = 400.0;
    std::int64_t perron_P = 10000;
    std::string out = ".";
    std::string format = "csv";
    int threads = 1;
};

legfact::FSpec parse_fspec_json(const json& node) {
    if (node.is_string()) return legfact::FSpec::parse(node.get<std::string>());
    if (!node.is_object()) throw legfact::config_error("fspec must be a string or object");
    legfact::FSpec f;
    const std::string shape = node.value("shape", "norm");
    if (shape == "norm" || shape == "exact_norm")
        f.shape = legfact::FShape::ExactNorm;
    else if (shape == "norm-1" || shape == "norm_minus_one")
        f.shape = legfact::FShape::NormMinusOne;
    else if (shape == "table")
        f.shape = legfact::FShape::Table;
    else
        throw legfact::config_error("unknown fspec shape \"" + shape + "\"");
    f.c = node.value("c", 1.0);
    if (node.contains("overrides")) {
        for (const auto& item : node.at("overrides")) {
            const std::int64_t p = item.at("p").get<std::int64_t>();
            const int pair = item.value("pair", 0);
            f.overrides[{p, pair}] = item.at("f").get<std::int64_t>();
        }
    }
    if (node.contains("delta_hint")) f.delta_hint = node.at("delta_hint").get<double>();
    f.validate();
    return f;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw legfact::config_error("cannot open config file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw legfact::config_error("config file " + path + ": " + e.what());
    }
    if (doc.contains("field")) cfg.field = doc.at("field").get<std::string>();
    if (doc.contains("s_exclude"))
        cfg.s_exclude = doc.at("s_exclude").get<std::vector<std::string>>();
    if (doc.contains("fspec")) {
        if (doc.at("fspec").is_string())
            cfg.fspec_text = doc.at("fspec").get<std::string>();
        else
            cfg.fspec_object = parse_fspec_json(doc.at("fspec"));
    }
    if (doc.contains("x_max")) cfg.x_max = doc.at("x_max").get<std::int64_t>();
    if (doc.contains("samples")) {
        cfg.samples_count = doc.at("samples").value("count", cfg.samples_count);
        cfg.samples_min = doc.at("samples").value("min", cfg.samples_min);
    }
    if (doc.contains("s_values")) cfg.s_values = doc.at("s_values").get<std::vector<double>>();
    if (doc.contains("epsilons")) cfg.epsilons = doc.at("epsilons").get<std::vector<double>>();
    if (doc.contains("perron")) {
        cfg.perron_x = doc.at("perron").value("x", cfg.perron_x);
        cfg.perron_T = doc.at("perron").value("T", cfg.perron_T);
        cfg.perron_P = doc.at("perron").value("P", cfg.perron_P);
    }
    if (doc.contains("output")) cfg.out = doc.at("output").get<std::string>();
    if (doc.contains("out")) cfg.out = doc.at("out").get<std::string>();
    if (doc.contains("format")) cfg.format = doc.at("format").get<std::string>();
    if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
}

legfact::SSet parse_s_exclude(const std::vector<std::string>& entries) {
    legfact::SSet s;
    for (const std::string& raw : entries) {
        legfact::SEntry entry;
        std::string text = raw;
        if (const auto pos = text.find(':'); pos != std::string::npos) {
            const std::string suffix = text.substr(pos + 1);
            if (suffix != "one")
                throw legfact::config_error("bad S-set entry \"" + raw + "\" (use p or p:one)");
            entry.which = legfact::SWhich::OneOfSplitPair;
            text = text.substr(0, pos);
        }
        try {
            std::size_t idx = 0;
            entry.p = std::stoll(text, &idx);
            if (idx != text.size()) throw std::invalid_argument(text);
        } catch (const std::logic_error&) {
            throw legfact::config_error("bad S-set entry \"" + raw + "\"");
        }
        s.entries.push_back(entry);
    }
    return s;
}

struct Resolved {
    legfact::FieldSpec field;
    legfact::SSet s_set;
    legfact::FSpec fspec;
};

Resolved resolve(const RunConfig& cfg) {
    if (cfg.x_max < 1) throw legfact::config_error("x_max must be >= 1");
    if (cfg.x_max > legfact::kTableEntryCap)
        throw legfact::config_error("x_max exceeds the table cap of " +
                                    std::to_string(legfact::kTableEntryCap));
    for (double s : cfg.s_values)
        if (!(s > 1.0)) throw legfact::config_error("s_values must all be > 1");
    for (double e : cfg.epsilons)
        if (!(e >= 1e-3 && e <= 0.5))
            throw legfact::config_error("epsilons must lie in [1e-3, 0.5]");
    if (cfg.format != "csv" && cfg.format != "json")
        throw legfact::config_error("format must be csv or json");
    if (cfg.threads < 0) throw legfact::config_error("threads must be >= 0");

    Resolved r;
    r.field = legfact::FieldSpec::parse(cfg.field);
    r.s_set = parse_s_exclude(cfg.s_exclude);
    r.s_set.validate(r.field);
    r.fspec = cfg.fspec_object ? *cfg.fspec_object : legfact::FSpec::parse(cfg.fspec_text);
    r.fspec.validate();
    return r;
}

int effective_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out);
    const fs::path path = fs::path(cfg.out) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

void write_table(const RunConfig& cfg, const legfact::IncrementTable& table,
                 const std::string& stem) {
    if (cfg.format == "json") {
        auto out = open_output(cfg, stem + ".json");
        out << "{\"n\":[";
        for (std::int64_t n = 1; n <= table.x_max; ++n) out << (n > 1 ? "," : "") << n;
        out << "],\"B\":[";
        for (std::int64_t n = 1; n <= table.x_max; ++n)
            out << (n > 1 ? "," : "")
                << legfact::format_double17(table.values[static_cast<std::size_t>(n)]);
        out << "],\"S\":[";
        for (std::int64_t n = 1; n <= table.x_max; ++n)
            out << (n > 1 ? "," : "")
                << legfact::format_double17(table.prefix[static_cast<std::size_t>(n)]);
        out << "]}\n";
    } else {
        auto out = open_output(cfg, stem + ".csv");
        legfact::write_increment_table_csv(out, table);
    }
}

std::vector<std::int64_t> config_samples(const RunConfig& cfg) {
    const std::int64_t lo =
        cfg.samples_min > 0 ? cfg.samples_min : std::max<std::int64_t>(100, cfg.x_max / 1000);
    return legfact::log_spaced_samples(std::min(lo, cfg.x_max), cfg.x_max, cfg.samples_count);
}

std::int64_t default_laurent_height(const std::vector<double>& epsilons) {
    double eps_min = 1.0;
    for (double e : epsilons) eps_min = std::min(eps_min, e);
    const double raw = std::ceil(10.0 / eps_min) * 1000.0;
    return std::min<std::int64_t>(static_cast<std::int64_t>(raw), 10'000'000);
}

int cmd_primes(const RunConfig& cfg, std::int64_t bound) {
    const Resolved r = resolve(cfg);
    if (bound <= 0) bound = cfg.x_max;
    if (bound < 2) throw legfact::config_error("primes: bound must be >= 2");
    const auto stream = legfact::prime_ideal_stream(r.field, r.s_set, bound);
    auto out = open_output(cfg, "primes.csv");
    legfact::write_ideal_stream_csv(out, stream);
    std::cout << "wrote " << stream.size() << " prime ideals (norm <= " << bound << ")\n";
    return 0;
}

int cmd_factorial(const RunConfig& cfg, std::int64_t n) {
    const Resolved r = resolve(cfg);
    if (n < 1) throw legfact::config_error("factorial: n must be >= 1");
    if (n > legfact::kTableEntryCap)
        throw legfact::size_error("factorial: n exceeds the configured cap");
    const auto ideal = legfact::factorial_ideal(n, r.field, r.s_set, r.fspec);
    auto out = open_output(cfg, "factorial.csv");
    legfact::write_exponent_ideal_csv(out, ideal);
    std::cout << "n = " << n << ": " << ideal.entries.size()
              << " prime ideals, log-norm = "
              << legfact::format_double17(legfact::log_norm_of_ideal(ideal)) << "\n";
    return 0;
}

int cmd_increments(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    const auto table =
        legfact::increments_upto(cfg.x_max, r.field, r.s_set, r.fspec, effective_threads(cfg));
    write_table(cfg, table, "increments");
    std::cout << "wrote increment table to x_max = " << cfg.x_max << "\n";
    return 0;
}

int cmd_summatory(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    const auto table =
        legfact::increments_upto(cfg.x_max, r.field, r.s_set, r.fspec, effective_threads(cfg));
    write_table(cfg, table, "summatory");

    auto out = open_output(cfg, "summatory.json");
    out << "{\"x_max\":" << table.x_max << ",\"c\":" << legfact::format_double17(table.c)
        << ",\"samples\":[";
    bool first = true;
    for (std::int64_t x : config_samples(cfg)) {
        if (!first) out << ',';
        first = false;
        out << "{\"x\":" << x << ",\"S\":"
            << legfact::format_double17(table.prefix[static_cast<std::size_t>(x)]) << "}";
    }
    out << "]}\n";
    std::cout << "S(" << table.x_max << ") = "
              << legfact::format_double17(table.prefix[static_cast<std::size_t>(table.x_max)])
              << "\n";
    return 0;
}

int cmd_analyze(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    std::vector<std::string> failures;

    const auto table =
        legfact::increments_upto(cfg.x_max, r.field, r.s_set, r.fspec, effective_threads(cfg));

    const auto fit = legfact::fit_main_terms(table, config_samples(cfg));
    {
        auto out = open_output(cfg, "fit.json");
        out << legfact::fit_report_json(fit) << "\n";
    }
    {
        auto out = open_output(cfg, "remainder.csv");
        legfact::write_remainder_csv(out, fit);
    }

    const auto decay = legfact::remainder_decay_check(fit);
    if (!decay.passed) failures.push_back("remainder_decay: " + decay.message);

    const auto lau = legfact::laurent_extract(r.field, r.s_set, r.fspec, cfg.epsilons,
                                              default_laurent_height(cfg.epsilons));
    {
        auto out = open_output(cfg, "laurent.json");
        out << legfact::laurent_json(lau) << "\n";
    }

    const auto cross = legfact::cross_check_constants(lau, fit);
    if (!cross.a_ok)
        failures.push_back("cross_check: |leading - a_hat| = " +
                           legfact::format_double17(cross.delta_a));
    if (!cross.c_ok)
        failures.push_back("cross_check: |(subleading - leading) - C_hat| = " +
                           legfact::format_double17(cross.delta_c));

    // Factorization check D(s) = zeta(s) H(s) at the configured abscissae.
    const std::int64_t N = std::min<std::int64_t>(cfg.x_max, 100000);
    {
        auto out = open_output(cfg, "series_check.json");
        out << "[";
        for (std::size_t i = 0; i < cfg.s_values.size(); ++i) {
            const double s = cfg.s_values[i];
            const auto dp = legfact::dirichlet_partial(s, N, table);
            const auto zh = legfact::zeta_times_h(s, N, r.field, r.s_set, r.fspec);
            const double gap = std::abs(dp.value - zh.value);
            const double budget = dp.tail_bound + zh.tail_bound;
            if (!(gap <= budget))
                failures.push_back("series_check: gap " + legfact::format_double17(gap) +
                                   " over budget at s = " + legfact::format_double17(s));
            if (i) out << ',';
            out << "{\"s\":" << legfact::format_double17(s)
                << ",\"dirichlet_partial\":" << legfact::series_point_json(dp)
                << ",\"zeta_times_h\":" << legfact::series_point_json(zh)
                << ",\"gap\":" << legfact::format_double17(gap)
                << ",\"budget\":" << legfact::format_double17(budget) << "}";
        }
        out << "]\n";
    }

    std::cout << "a_hat = " << legfact::format_double17(fit.a_hat)
              << "  C_hat = " << legfact::format_double17(fit.C_hat)
              << "  leading = " << legfact::format_double17(lau.leading)
              << "  subleading = " << legfact::format_double17(lau.subleading)
              << "  decay_slope = " << legfact::format_double17(decay.slope) << "\n";

    if (!failures.empty()) {
        auto out = open_output(cfg, "failures.json");
        out << "{\"failures\":[";
        for (std::size_t i = 0; i < failures.size(); ++i) {
            if (i) out << ',';
            out << json(failures[i]).dump();
        }
        out << "]}\n";
        for (const auto& f : failures) std::cerr << "FAILED " << f << "\n";
        return 1;
    }
    return 0;
}

int cmd_perron(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    if (!(cfg.perron_T >= 2.0)) throw legfact::config_error("perron: T must be >= 2");
    if (!(cfg.perron_x >= 2.0)) throw legfact::config_error("perron: x must be >= 2");

    const auto table = legfact::increments_upto(
        static_cast<std::int64_t>(std::floor(cfg.perron_x)) + 1, r.field, r.s_set, r.fspec,
        effective_threads(cfg));
    const double direct = legfact::summatory(cfg.perron_x, table);

    auto out = open_output(cfg, "perron.csv");
    out << "T,estimate,direct,abs_error\n";
    for (double T : {cfg.perron_T / 8, cfg.perron_T / 4, cfg.perron_T / 2, cfg.perron_T}) {
        if (T < 2.0) continue;
        const double estimate = legfact::perron_estimate(cfg.perron_x, T, r.field, r.s_set,
                                                         r.fspec, cfg.perron_P);
        out << legfact::format_double17(T) << ',' << legfact::format_double17(estimate) << ','
            << legfact::format_double17(direct) << ','
            << legfact::format_double17(std::abs(estimate - direct)) << '\n';
    }
    std::cout << "S(" << cfg.perron_x << ") = " << legfact::format_double17(direct) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;
    std::string field_flag, fspec_flag, out_flag, format_flag, s_exclude_flag;
    std::int64_t x_max_flag = -1;
    int threads_flag = -1;
    std::int64_t primes_bound = 0;
    std::int64_t factorial_n = 1;

    CLI::App app{"generalized Legendre factorials over Q and quadratic fields"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration");
        cmd->add_option("--field", field_flag, "base field: Q or Q(sqrt<d>)");
        cmd->add_option("--fspec", fspec_flag, "norm | norm-1 | c*norm:<real> | table:<path>");
        cmd->add_option("--x-max", x_max_flag, "table size");
        cmd->add_option("--s-exclude", s_exclude_flag,
                        "comma-separated excluded primes, each p or p:one");
        cmd->add_option("--out", out_flag, "output directory");
        cmd->add_option("--format", format_flag, "csv | json");
        cmd->add_option("--threads", threads_flag, "worker threads (0 = auto)");
    };

    CLI::App* primes = app.add_subcommand("primes", "write the prime-ideal stream");
    primes->add_option("--bound", primes_bound, "norm bound (default: x_max)");
    add_common(primes);

    CLI::App* factorial = app.add_subcommand("factorial", "write one factorial ideal");
    factorial->add_option("n", factorial_n, "factorial index")->required();
    add_common(factorial);

    CLI::App* increments = app.add_subcommand("increments", "write the increment table");
    add_common(increments);
    CLI::App* summatory = app.add_subcommand("summatory", "write table plus summary");
    add_common(summatory);
    CLI::App* analyze = app.add_subcommand("analyze", "fit constants and run checks");
    add_common(analyze);
    CLI::App* perron = app.add_subcommand("perron", "truncated Perron T-sweep");
    add_common(perron);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) load_config_file(cfg, config_path);
        if (!field_flag.empty()) cfg.field = field_flag;
        if (!fspec_flag.empty()) {
            cfg.fspec_text = fspec_flag;
            cfg.fspec_object.reset();
        }
        if (x_max_flag >= 0) cfg.x_max = x_max_flag;
        if (!out_flag.empty()) cfg.out = out_flag;
        if (!format_flag.empty()) cfg.format = format_flag;
        if (threads_flag >= 0) cfg.threads = threads_flag;
        if (!s_exclude_flag.empty()) {
            cfg.s_exclude.clear();
            std::string token;
            std::istringstream in(s_exclude_flag);
            while (std::getline(in, token, ','))
                if (!token.empty()) cfg.s_exclude.push_back(token);
        }

        if (primes->parsed()) return cmd_primes(cfg, primes_bound);
        if (factorial->parsed()) return cmd_factorial(cfg, factorial_n);
        if (increments->parsed()) return cmd_increments(cfg);
        if (summatory->parsed()) return cmd_summatory(cfg);
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (perron->parsed()) return cmd_perron(cfg);
        return 2;
    } catch (const legfact::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
