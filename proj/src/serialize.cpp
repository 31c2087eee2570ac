#include "greedy/serialize.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace greedy {

namespace {

using nlohmann::json;

json trace_records_json(const Trace& trace) {
  json records = json::array();
  for (const IterationRecord& rec : trace.records) {
    records.push_back({{"m", rec.m},
                       {"atom_index", rec.atom.index},
                       {"atom_sign", rec.atom.sign},
                       {"step", rec.step},
                       {"residual_l2", rec.residual_l2},
                       {"approx_l1", rec.approx_l1}});
  }
  return records;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_csv(const Trace& trace) {
  std::string out = "m,atom_index,atom_sign,step,residual_l2,approx_l1\n";
  for (const IterationRecord& rec : trace.records) {
    out += std::to_string(rec.m);
    out += ',';
    out += std::to_string(rec.atom.index);
    out += ',';
    out += std::to_string(rec.atom.sign);
    out += ',';
    out += format_g17(rec.step);
    out += ',';
    out += format_g17(rec.residual_l2);
    out += ',';
    out += format_g17(rec.approx_l1);
    out += '\n';
  }
  return out;
}

std::string trace_json(const Trace& trace) {
  json doc;
  doc["records"] = trace_records_json(trace);
  return doc.dump(2) + "\n";
}

std::string report_csv(const BoundReport& report, const std::vector<std::string>& preamble) {
  std::string out;
  for (const std::string& line : preamble) {
    out += "# ";
    out += line;
    out += '\n';
  }
  out += "m,observed,bound,satisfied\n";
  for (const BoundEntry& e : report.per_m) {
    out += std::to_string(e.m);
    out += ',';
    out += format_g17(e.observed);
    out += ',';
    out += format_g17(e.bound);
    out += ',';
    out += e.satisfied ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string report_json(const BoundReport& report,
                        const std::vector<std::pair<std::string, std::string>>& extra) {
  json doc;
  doc["name"] = report.name;
  doc["all_satisfied"] = report.all_satisfied;
  doc["worst_margin"] = report.worst_margin;
  for (const auto& [key, value] : extra) doc[key] = value;
  return doc.dump(2) + "\n";
}

std::string dictionary_json(const Dictionary& dict) {
  json doc;
  doc["dim"] = dict.dim;
  doc["atoms"] = dict.atoms;
  return doc.dump() + "\n";
}

std::string a1_element_json(const A1Element& element) {
  json entries = json::array();
  for (const A1Entry& e : element.entries) {
    entries.push_back({e.index, e.sign, e.coefficient});
  }
  json doc;
  doc["entries"] = entries;
  doc["tau"] = element.tau;
  return doc.dump() + "\n";
}

std::string instance_json(const Instance& instance) {
  json doc;
  doc["dictionary"] = json::parse(dictionary_json(instance.dict));
  doc["element"] = json::parse(a1_element_json(instance.element));
  return doc.dump(2) + "\n";
}

Instance parse_instance_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("instance: invalid JSON: ") + err.what());
  }
  if (!doc.contains("dictionary") || !doc.contains("element")) {
    throw std::invalid_argument("instance: expected top-level \"dictionary\" and \"element\"");
  }

  Instance inst;
  try {
    const json& d = doc.at("dictionary");
    inst.dict.dim = d.at("dim").get<int>();
    inst.dict.atoms = d.at("atoms").get<std::vector<Vector>>();
  } catch (const json::exception& err) {
    throw std::invalid_argument(std::string("instance: malformed dictionary: ") + err.what());
  }

  const DictionaryReport report = validate(inst.dict);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << "instance: dictionary failed validation:";
    for (const DictionaryViolation& v : report.violations) {
      msg << " [atom " << v.index << ": " << v.what << " (" << v.value << ")]";
    }
    throw std::invalid_argument(msg.str());
  }

  std::vector<A1Entry> entries;
  double tau = 1.0;
  try {
    const json& e = doc.at("element");
    tau = e.at("tau").get<double>();
    for (const json& row : e.at("entries")) {
      if (!row.is_array() || row.size() != 3) {
        throw std::invalid_argument("instance: entry rows must be [index, sign, coefficient]");
      }
      entries.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
    }
  } catch (const json::exception& err) {
    throw std::invalid_argument(std::string("instance: malformed element: ") + err.what());
  }

  inst.element = build_a1_element(inst.dict, entries, tau);
  return inst;
}

Instance load_instance(const std::string& path) {
  return parse_instance_json(read_text_file(path));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace greedy
