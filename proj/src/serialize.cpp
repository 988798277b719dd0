#include "legfact/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "legfact/errors.hpp"

namespace legfact {

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_increment_table_csv(std::ostream& out, const IncrementTable& table) {
    out << "n,B,S\n";
    for (std::int64_t n = 1; n <= table.x_max; ++n) {
        out << n << ',' << format_double17(table.values[static_cast<std::size_t>(n)]) << ','
            << format_double17(table.prefix[static_cast<std::size_t>(n)]) << '\n';
    }
}

IncrementTable read_increment_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "n,B,S")
        throw config_error("increment table CSV: bad header");
    IncrementTable table;
    table.values.push_back(0.0);
    table.prefix.push_back(0.0);
    std::int64_t expected = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::int64_t n = 0;
        double b = 0.0, s = 0.0;
        char* end = nullptr;
        n = std::strtoll(line.c_str(), &end, 10);
        if (*end != ',') throw config_error("increment table CSV: bad row");
        b = std::strtod(end + 1, &end);
        if (*end != ',') throw config_error("increment table CSV: bad row");
        s = std::strtod(end + 1, &end);
        if (n != expected)
            throw config_error("increment table CSV: rows must be consecutive from 1");
        table.values.push_back(b);
        table.prefix.push_back(s);
        ++expected;
    }
    table.x_max = expected - 1;
    return table;
}

void write_ideal_stream_csv(std::ostream& out, const std::vector<PrimeIdeal>& stream) {
    out << "p,residue_degree,norm\n";
    for (const PrimeIdeal& ideal : stream)
        out << ideal.p << ',' << ideal.residue_degree << ',' << ideal.norm << '\n';
}

void write_exponent_ideal_csv(std::ostream& out, const ExponentIdeal& ideal) {
    out << "p,residue_degree,norm,exponent\n";
    for (const auto& entry : ideal.entries)
        out << entry.ideal.p << ',' << entry.ideal.residue_degree << ',' << entry.ideal.norm
            << ',' << entry.exponent << '\n';
    out << "log_norm," << format_double17(log_norm_of_ideal(ideal)) << '\n';
}

std::string series_point_json(const SeriesPoint& pt) {
    std::ostringstream out;
    out << "{\"s\":" << format_double17(pt.s) << ",\"value\":" << format_double17(pt.value)
        << ",\"truncation\":" << pt.truncation
        << ",\"tail_bound\":" << format_double17(pt.tail_bound) << "}";
    return out.str();
}

std::string laurent_json(const LaurentEstimate& est) {
    std::ostringstream out;
    out << "{\"leading\":" << format_double17(est.leading)
        << ",\"subleading\":" << format_double17(est.subleading) << ",\"epsilons\":[";
    for (std::size_t i = 0; i < est.epsilons.size(); ++i) {
        if (i) out << ',';
        out << format_double17(est.epsilons[i]);
    }
    out << "],\"condition\":" << format_double17(est.condition) << "}";
    return out.str();
}

std::string fit_report_json(const FitReport& report) {
    std::ostringstream out;
    out << "{\"a_hat\":" << format_double17(report.a_hat)
        << ",\"C_hat\":" << format_double17(report.C_hat)
        << ",\"a_theory\":" << format_double17(report.a_theory) << ",\"sample_xs\":[";
    for (std::size_t i = 0; i < report.sample_xs.size(); ++i) {
        if (i) out << ',';
        out << report.sample_xs[i];
    }
    out << "],\"residual_max_rel\":" << format_double17(report.residual_max_rel)
        << ",\"remainder_profile\":[";
    for (std::size_t i = 0; i < report.remainder_profile.size(); ++i) {
        if (i) out << ',';
        out << '[' << format_double17(report.remainder_profile[i].first) << ','
            << format_double17(report.remainder_profile[i].second) << ']';
    }
    out << "],\"c_star_placeholder\":" << format_double17(report.c_star_placeholder) << "}";
    return out.str();
}

void write_remainder_csv(std::ostream& out, const FitReport& report) {
    out << "x,R_over_x\n";
    for (const auto& [x, r] : report.remainder_profile)
        out << format_double17(x) << ',' << format_double17(r) << '\n';
}

FSpec FSpec::parse(const std::string& text) {
    if (text == "norm") return FSpec::exact_norm(1.0);
    if (text == "norm-1") return FSpec::norm_minus_one(1.0);
    if (text.rfind("c*norm:", 0) == 0) {
        const std::string num = text.substr(7);
        try {
            std::size_t pos = 0;
            const double c = std::stod(num, &pos);
            if (pos != num.size()) throw std::invalid_argument(num);
            return FSpec::exact_norm(c);
        } catch (const std::logic_error&) {
            throw config_error("bad scale in f-spec \"" + text + "\"");
        }
    }
    if (text.rfind("table:", 0) == 0) {
        const std::string path = text.substr(6);
        std::ifstream in(path);
        if (!in) throw config_error("cannot open f-spec table file " + path);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw config_error("f-spec table file " + path + ": " + e.what());
        }
        FSpec f;
        f.shape = FShape::Table;
        f.c = doc.value("c", 1.0);
        if (doc.contains("overrides")) {
            for (const auto& item : doc.at("overrides")) {
                const std::int64_t p = item.at("p").get<std::int64_t>();
                const int pair = item.value("pair", 0);
                const std::int64_t value = item.at("f").get<std::int64_t>();
                f.overrides[{p, pair}] = value;
            }
        }
        f.validate();
        return f;
    }
    throw config_error("unrecognized f-spec \"" + text +
                       "\" (expected norm | norm-1 | c*norm:<real> | table:<path>)");
}

} // namespace legfact
