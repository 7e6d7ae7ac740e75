#include "timewise/network_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace timewise {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<double> number_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& item : j) {
    if (!item.is_number()) throw ParseError(where + ": expected an array of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

const json& array_field(const json& root, const char* key, bool required) {
  static const json kEmpty = json::array();
  auto it = root.find(key);
  if (it == root.end()) {
    if (required) throw ParseError(std::string("missing top-level field '") + key + "'");
    return kEmpty;
  }
  if (!it->is_array()) throw ParseError(std::string("top-level field '") + key + "' must be an array");
  return *it;
}

void write_strings(std::ostringstream& out, const std::vector<std::string>& items) {
  out << '[';
  for (std::size_t i = 0; i < items.size(); ++i) out << (i ? ", " : "") << json(items[i]).dump();
  out << ']';
}

void write_numbers(std::ostringstream& out, const std::vector<double>& items) {
  out << '[';
  for (std::size_t i = 0; i < items.size(); ++i) out << (i ? ", " : "") << detail::format_g17(items[i]);
  out << ']';
}

}  // namespace

NetworkData parse_network_data(std::string_view text) {
  const json root = detail::parse_json(text);
  if (!root.is_object()) throw ParseError("network file must be a JSON object");

  NetworkData data;
  for (const auto& v : array_field(root, "variables", true)) {
    const std::string where = "variable";
    if (!v.is_object()) throw ParseError("variables: entries must be objects");
    data.variables.push_back({string_field(v, "id", where), string_list(field(v, "states", where), where)});
  }
  for (const auto& c : array_field(root, "chance", true)) {
    if (!c.is_object()) throw ParseError("chance: entries must be objects");
    ChanceSpec spec;
    spec.id = string_field(c, "id", "chance node");
    const std::string where = "chance node '" + spec.id + "'";
    if (auto it = c.find("parents"); it != c.end()) spec.parents = string_list(*it, where + " parents");
    if (auto it = c.find("cpt"); it != c.end()) spec.cpt = number_list(*it, where + " cpt");
    if (auto it = c.find("arc_importance"); it != c.end()) {
      spec.arc_importance = number_list(*it, where + " arc_importance");
    }
    if (auto it = c.find("noisy_or"); it != c.end()) {
      if (!it->is_object()) throw ParseError(where + ": noisy_or must be an object");
      NoisyOrSpec noisy;
      noisy.activations = number_list(field(*it, "activations", where), where + " activations");
      if (auto leak = it->find("leak"); leak != it->end()) {
        if (!leak->is_number()) throw ParseError(where + ": leak must be a number");
        noisy.leak = leak->get<double>();
      }
      spec.noisy_or = std::move(noisy);
    } else if (c.find("cpt") == c.end()) {
      throw ParseError(where + ": needs either cpt or noisy_or");
    }
    data.chance.push_back(std::move(spec));
  }
  for (const auto& d : array_field(root, "decisions", false)) {
    if (!d.is_object()) throw ParseError("decisions: entries must be objects");
    const std::string where = "decision";
    data.decisions.push_back({string_field(d, "id", where), string_list(field(d, "options", where), where)});
  }
  for (const auto& v : array_field(root, "values", false)) {
    if (!v.is_object()) throw ParseError("values: entries must be objects");
    const std::string where = "value node";
    ValueNode node{string_field(v, "id", where), {}};
    if (auto it = v.find("parents"); it != v.end()) node.parents = string_list(*it, where);
    data.values.push_back(std::move(node));
  }
  return data;
}

Network parse_network(std::string_view text) { return Network::build(parse_network_data(text)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Network load_network(const std::filesystem::path& path) { return parse_network(read_text_file(path)); }

std::string serialize_network(const NetworkData& data) {
  std::ostringstream out;
  out << "{\n  \"variables\": [";
  for (std::size_t i = 0; i < data.variables.size(); ++i) {
    const auto& v = data.variables[i];
    out << (i ? ",\n" : "\n") << "    {\"id\": " << json(v.id).dump() << ", \"states\": ";
    write_strings(out, v.states);
    out << '}';
  }
  out << (data.variables.empty() ? "" : "\n  ") << "],\n  \"chance\": [";
  for (std::size_t i = 0; i < data.chance.size(); ++i) {
    const auto& c = data.chance[i];
    out << (i ? ",\n" : "\n") << "    {\"id\": " << json(c.id).dump() << ", \"parents\": ";
    write_strings(out, c.parents);
    if (!c.noisy_or) {
      out << ", \"cpt\": ";
      write_numbers(out, c.cpt);
    }
    if (c.arc_importance) {
      out << ", \"arc_importance\": ";
      write_numbers(out, *c.arc_importance);
    }
    if (c.noisy_or) {
      out << ", \"noisy_or\": {\"activations\": ";
      write_numbers(out, c.noisy_or->activations);
      out << ", \"leak\": " << detail::format_g17(c.noisy_or->leak) << '}';
    }
    out << '}';
  }
  out << (data.chance.empty() ? "" : "\n  ") << "],\n  \"decisions\": [";
  for (std::size_t i = 0; i < data.decisions.size(); ++i) {
    const auto& d = data.decisions[i];
    out << (i ? ",\n" : "\n") << "    {\"id\": " << json(d.id).dump() << ", \"options\": ";
    write_strings(out, d.options);
    out << '}';
  }
  out << (data.decisions.empty() ? "" : "\n  ") << "],\n  \"values\": [";
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    const auto& v = data.values[i];
    out << (i ? ",\n" : "\n") << "    {\"id\": " << json(v.id).dump() << ", \"parents\": ";
    write_strings(out, v.parents);
    out << '}';
  }
  out << (data.values.empty() ? "" : "\n  ") << "]\n}\n";
  return out.str();
}

namespace {

std::pair<std::string, std::string> split_assignment(std::string_view item) {
  const auto eq = item.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
    throw ParseError("expected VAR=STATE, got '" + std::string(item) + "'");
  }
  return {std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Evidence parse_evidence(std::string_view text) {
  Evidence ev;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    auto [var, state] = split_assignment(item);
    if (!ev.assignments.emplace(var, state).second) {
      throw ParseError("variable '" + var + "' assigned twice in evidence");
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return ev;
}

Query parse_query(std::string_view text) {
  text = trim(text);
  if (text.find(',') != std::string_view::npos) throw ParseError("query must be a single VAR=STATE");
  auto [var, state] = split_assignment(text);
  return {var, state};
}

}  // namespace timewise
