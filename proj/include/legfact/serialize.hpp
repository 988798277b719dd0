#pragma once

#include <iosfwd>
#include <string>

#include "legfact/asymptotics.hpp"
#include "legfact/dirichlet.hpp"
#include "legfact/factorial.hpp"

namespace legfact {

/// Shortest 17-significant-digit decimal form; round-trips binary64 exactly.
std::string format_double17(double v);

// Increment tables: CSV with header "n,B,S".  Reading back what was written
// and re-serializing is byte-identical.
void write_increment_table_csv(std::ostream& out, const IncrementTable& table);
IncrementTable read_increment_table_csv(std::istream& in);

// Prime-ideal stream: CSV "p,residue_degree,norm".
void write_ideal_stream_csv(std::ostream& out, const std::vector<PrimeIdeal>& stream);

// Exponent map: CSV "p,residue_degree,norm,exponent" plus a trailer line
// "log_norm,<value>".
void write_exponent_ideal_csv(std::ostream& out, const ExponentIdeal& ideal);

// JSON serializations; field names match the structs exactly.
std::string series_point_json(const SeriesPoint& pt);
std::string laurent_json(const LaurentEstimate& est);
std::string fit_report_json(const FitReport& report);

// Remainder profile: CSV "x,R_over_x".
void write_remainder_csv(std::ostream& out, const FitReport& report);

} // namespace legfact
