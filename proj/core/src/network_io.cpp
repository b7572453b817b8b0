#include "flowtime/network_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

using nlohmann::json;

// Line number of a byte offset, for syntax error messages.
int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') line++;
  return line;
}

Rat parse_number(const json& j, const std::string& field) {
  Rat r;
  if (j.is_number_integer()) {
    r = Rat(static_cast<long>(j.get<std::int64_t>()));
  } else if (j.is_string()) {
    r = Rat::parse(j.get<std::string>());
  } else if (j.is_number_float()) {
    throw ParseError("field \"" + field +
                     "\": floating point literals are not accepted, use \"p/q\"");
  } else {
    throw ParseError("field \"" + field + "\": expected integer or \"p/q\" string");
  }
  // Every quantity in the format is a capacity, delay, rate, or mass.
  if (r.sign() < 0)
    throw DomainError("field \"" + field + "\": negative value");
  return r;
}

std::string require_string(const json& j, const std::string& field) {
  if (!j.is_string())
    throw ParseError("field \"" + field + "\": expected string");
  return j.get<std::string>();
}

const json& require_field(const json& obj, const std::string& field,
                          const std::string& ctx) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw ParseError("missing field \"" + field + "\" in " + ctx);
  return *it;
}

}  // namespace

Network parse_network(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("JSON syntax error at line " +
                     std::to_string(line_of(json_text, e.byte)) + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError("instance must be a JSON object");

  Network net;
  const json& nodes = require_field(root, "nodes", "instance");
  if (!nodes.is_array()) throw ParseError("field \"nodes\": expected array");
  for (const auto& n : nodes) net.nodes.push_back(require_string(n, "nodes[]"));

  const json& edges = require_field(root, "edges", "instance");
  if (!edges.is_array()) throw ParseError("field \"edges\": expected array");
  for (const auto& e : edges) {
    if (!e.is_object()) throw ParseError("field \"edges[]\": expected object");
    Edge edge;
    edge.id = require_string(require_field(e, "id", "edge"), "edges[].id");
    edge.tail = require_string(require_field(e, "tail", "edge " + edge.id), "edges[].tail");
    edge.head = require_string(require_field(e, "head", "edge " + edge.id), "edges[].head");
    edge.capacity = parse_number(require_field(e, "capacity", "edge " + edge.id),
                                 "edges[" + edge.id + "].capacity");
    edge.delay = parse_number(require_field(e, "delay", "edge " + edge.id),
                              "edges[" + edge.id + "].delay");
    net.edges.push_back(std::move(edge));
  }

  net.source = require_string(require_field(root, "source", "instance"), "source");
  net.sink = require_string(require_field(root, "sink", "instance"), "sink");
  net.inflow_rate = parse_number(require_field(root, "inflow_rate", "instance"), "inflow_rate");
  net.demand = parse_number(require_field(root, "demand", "instance"), "demand");
  return net;
}

std::string serialize_network(const Network& net) {
  std::ostringstream os;
  os << "{\n  \"nodes\": [";
  for (std::size_t i = 0; i < net.nodes.size(); ++i)
    os << (i ? ", " : "") << "\"" << net.nodes[i] << "\"";
  os << "],\n  \"edges\": [";
  std::vector<const Edge*> ordered;
  for (const auto& e : net.edges) ordered.push_back(&e);
  std::sort(ordered.begin(), ordered.end(),
            [](const Edge* a, const Edge* b) { return a->id < b->id; });
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const Edge& e = *ordered[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"id\": \"" << e.id << "\", \"tail\": \"" << e.tail
       << "\", \"head\": \"" << e.head << "\", \"capacity\": \""
       << e.capacity.str_explicit() << "\", \"delay\": \""
       << e.delay.str_explicit() << "\"}";
  }
  os << (ordered.empty() ? "" : "\n  ") << "],\n";
  os << "  \"source\": \"" << net.source << "\",\n";
  os << "  \"sink\": \"" << net.sink << "\",\n";
  os << "  \"inflow_rate\": \"" << net.inflow_rate.str_explicit() << "\",\n";
  os << "  \"demand\": \"" << net.demand.str_explicit() << "\"\n}\n";
  return os.str();
}

Network load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file \"" + path + "\"");
  out << content;
  if (!out) throw IoError("short write to \"" + path + "\"");
}

}  // namespace flowtime
