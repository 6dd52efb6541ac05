#include "racgap/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace racgap {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << path << ":" << line << ": " << what;
  throw std::runtime_error(msg.str());
}

int field_value(const nlohmann::json& j, const char* key, const std::string& path,
                std::size_t line) {
  const auto it = j.find(key);
  if (it == j.end()) fail(path, line, std::string("missing field '") + key + "'");
  if (!it->is_number_integer()) fail(path, line, std::string("field '") + key + "' must be an integer");
  return it->get<int>();
}

RoundRecord record_from_json(const nlohmann::json& j, const std::string& path,
                             std::size_t line) {
  static const char* kFields[] = {"t", "a0", "a1", "y", "m", "b", "x", "kept"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* f : kFields) known = known || key == f;
    if (!known) fail(path, line, "unknown field '" + key + "'");
  }
  RoundRecord r;
  r.t = field_value(j, "t", path, line);
  r.a0 = static_cast<Bit>(field_value(j, "a0", path, line));
  r.a1 = static_cast<Bit>(field_value(j, "a1", path, line));
  r.y = static_cast<Bit>(field_value(j, "y", path, line));
  r.m = static_cast<Bit>(field_value(j, "m", path, line));
  r.b = static_cast<Bit>(field_value(j, "b", path, line));
  r.x = static_cast<Bit>(field_value(j, "x", path, line));
  r.kept = static_cast<Bit>(field_value(j, "kept", path, line));
  return r;
}

RoundRecord record_from_csv(const std::string& text, const std::string& path,
                            std::size_t line) {
  int fields[8];
  std::size_t pos = 0;
  for (int i = 0; i < 8; ++i) {
    const std::size_t next = text.find(',', pos);
    const std::size_t end = next == std::string::npos ? text.size() : next;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, fields[i]);
    if (ec != std::errc{} || ptr != text.data() + end) {
      fail(path, line, "expected 8 comma-separated integers (t,a0,a1,y,m,b,x,kept)");
    }
    if ((i < 7) == (next == std::string::npos)) {
      fail(path, line, "expected 8 comma-separated integers (t,a0,a1,y,m,b,x,kept)");
    }
    pos = end + 1;
  }
  RoundRecord r;
  r.t = fields[0];
  r.a0 = static_cast<Bit>(fields[1]);
  r.a1 = static_cast<Bit>(fields[2]);
  r.y = static_cast<Bit>(fields[3]);
  r.m = static_cast<Bit>(fields[4]);
  r.b = static_cast<Bit>(fields[5]);
  r.x = static_cast<Bit>(fields[6]);
  r.kept = static_cast<Bit>(fields[7]);
  return r;
}

}  // namespace

void write_trace_jsonl(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  nlohmann::ordered_json header;
  header["format_version"] = 1;
  header["kind"] = "trace";
  header["seed"] = trace.seed;
  header["model_tag"] = trace.model_tag;
  out << header.dump() << "\n";
  for (const auto& r : trace.rounds) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["a0"] = int(r.a0);
    j["a1"] = int(r.a1);
    j["y"] = int(r.y);
    j["m"] = int(r.m);
    j["b"] = int(r.b);
    j["x"] = int(r.x);
    j["kept"] = int(r.kept);
    out << j.dump() << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Trace read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  std::int32_t expected_t = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    RoundRecord r;
    if (line.front() == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& err) {
        fail(path, line_no, err.what());
      }
      if (j.contains("format_version")) {
        // Metadata line.
        if (j["format_version"] != 1) fail(path, line_no, "unsupported format_version");
        if (j.contains("seed") && j["seed"].is_number_unsigned()) {
          trace.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("model_tag") && j["model_tag"].is_string()) {
          trace.model_tag = j["model_tag"].get<std::string>();
        }
        continue;
      }
      r = record_from_json(j, path, line_no);
    } else {
      r = record_from_csv(line, path, line_no);
    }
    try {
      validate(r);
    } catch (const std::invalid_argument& err) {
      fail(path, line_no, err.what());
    }
    if (r.t != expected_t) {
      std::ostringstream msg;
      msg << "round index " << r.t << " out of order (expected " << expected_t << ")";
      fail(path, line_no, msg.str());
    }
    ++expected_t;
    trace.rounds.push_back(r);
  }
  if (trace.rounds.empty()) throw std::runtime_error(path + ": trace has no rounds");
  return trace;
}

}  // namespace racgap
