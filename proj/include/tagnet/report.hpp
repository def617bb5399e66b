#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "tagnet/diagnostics.hpp"
#include "tagnet/metrics.hpp"

namespace tagnet::report {

using Json = nlohmann::ordered_json;

// "%.6g", the float format of every output file.
std::string sig6(double x);

// Summary document with a fixed key order. Absent statistics are null.
Json summary_json(const diagnostics::NetworkSummary& summary);

// Pretty-printed summary plus trailing newline.
std::string summary_text(const diagnostics::NetworkSummary& summary);

// k<TAB>count<TAB>P(k)<TAB>CCDF(k), one header line, sorted by k.
void write_degree_tsv(std::ostream& out, const metrics::DegreeDistribution& dist);

// k<TAB>CCDF(k), one header line, sorted by k.
void write_ccdf_tsv(std::ostream& out, const metrics::DegreeDistribution& dist);

// Gnuplot script drawing log-log P(k) and CCDF with their fitted lines.
std::string plot_script(const diagnostics::NetworkSummary& summary, const std::string& degree_file,
                        const std::string& ccdf_file);

// Human-readable rendering of a summary document.
std::string text_report(const Json& summary);

}  // namespace tagnet::report
