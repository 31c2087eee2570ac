#pragma once

#include <string>
#include <utility>
#include <vector>

#include "greedy/analysis.hpp"

namespace greedy {

// Shortest-width decimal with 17 significant digits ("%.17g"), enough to
// round-trip any double.
std::string format_g17(double v);

// CSV with header m,atom_index,atom_sign,step,residual_l2,approx_l1 and one
// row per record; doubles carry 17 significant digits.
std::string trace_csv(const Trace& trace);

// JSON document mirroring the CSV fields: {"records": [{...}, ...]}.
std::string trace_json(const Trace& trace);

// CSV with header m,observed,bound,satisfied (satisfied as 1/0). Optional
// preamble lines are emitted first, each prefixed with "# ".
std::string report_csv(const BoundReport& report,
                       const std::vector<std::string>& preamble = {});

// JSON summary {"name", "all_satisfied", "worst_margin"} plus optional
// extra string fields.
std::string report_json(const BoundReport& report,
                        const std::vector<std::pair<std::string, std::string>>& extra = {});

// {"dim": n, "atoms": [[...], ...]}
std::string dictionary_json(const Dictionary& dict);

// {"entries": [[index, sign, coefficient], ...], "tau": t}
std::string a1_element_json(const A1Element& element);

// {"dictionary": {...}, "element": {...}}
std::string instance_json(const Instance& instance);

// Parses an instance document, validates the dictionary (every atom unit
// norm, consistent dimensions) and certifies the element via
// build_a1_element. Throws std::invalid_argument on schema or validation
// failures, std::domain_error on a failed membership constraint.
Instance parse_instance_json(const std::string& text);

// Reads and parses a file; throws std::runtime_error when unreadable.
Instance load_instance(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace greedy
