#include "ofa/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "ofa/errors.hpp"

namespace ofa {

namespace {

int require_int(const nlohmann::json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key)) throw ParseError(source, 0, std::string("missing key '") + key + "'");
  const nlohmann::json& v = doc.at(key);
  if (!v.is_number_integer()) throw ParseError(source, 0, std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? std::string() : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

long long parse_integer(const std::string& text, const std::string& source, std::size_t line, const char* what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) {
    throw ParseError(source, line, std::string("bad ") + what + " '" + text + "' (integers only)");
  }
  return value;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigInvalid("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

GridInstance instance_from_json(const nlohmann::json& doc, const std::string& source) {
  if (!doc.is_object()) throw ParseError(source, 0, "instance must be an object");
  const int rows = require_int(doc, "rows", source);
  const int cols = require_int(doc, "cols", source);
  if (!doc.contains("facilities") || !doc.at("facilities").is_array()) {
    throw ParseError(source, 0, "'facilities' must be a list");
  }
  std::vector<FacilitySpec> specs;
  for (const nlohmann::json& f : doc.at("facilities")) {
    if (!f.is_object()) throw ParseError(source, 0, "facility entries must be objects");
    specs.push_back(FacilitySpec{GridPoint{require_int(f, "x", source), require_int(f, "y", source)},
                                 require_int(f, "capacity", source)});
  }
  return GridInstance(rows, cols, specs);
}

nlohmann::json instance_to_json(const GridInstance& instance) {
  nlohmann::json facilities = nlohmann::json::array();
  for (const Facility& f : instance.facilities()) {
    facilities.push_back({{"x", f.location.x}, {"y", f.location.y}, {"capacity", f.capacity}});
  }
  return nlohmann::json{{"rows", instance.rows()}, {"cols", instance.cols()}, {"facilities", facilities}};
}

GridInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  return instance_from_json(doc, path);
}

void write_instance_file(const std::string& path, const GridInstance& instance) {
  std::ofstream out = open_output(path);
  out << instance_to_json(instance).dump(2) << "\n";
}

RequestSequence read_sequence(std::istream& in, const std::string& source) {
  RequestSequence sequence;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    const std::vector<std::string> fields = split_fields(line);
    if (first_content) {
      first_content = false;
      if (!fields.empty() && fields[0] == "x") {
        if (fields.size() < 2 || fields[1] != "y" || (fields.size() == 3 && fields[2] != "arrival_time") ||
            fields.size() > 3) {
          throw ParseError(source, line_no, "unexpected header '" + line + "'");
        }
        continue;
      }
    }
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(source, line_no, "expected 2 or 3 fields, got " + std::to_string(fields.size()));
    }
    Request r;
    r.location.x = static_cast<int>(parse_integer(fields[0], source, line_no, "x"));
    r.location.y = static_cast<int>(parse_integer(fields[1], source, line_no, "y"));
    r.arrival_time = fields.size() == 3 ? parse_integer(fields[2], source, line_no, "arrival_time")
                                        : static_cast<TimeStep>(sequence.size() + 1);
    if (r.arrival_time < 0) throw ParseError(source, line_no, "negative arrival time");
    if (!sequence.empty() && r.arrival_time < sequence.requests.back().arrival_time) {
      throw ParseError(source, line_no, "arrival times must be non-decreasing");
    }
    sequence.requests.push_back(r);
  }
  return sequence;
}

RequestSequence read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_sequence(in, path);
}

void write_sequence(std::ostream& out, const RequestSequence& sequence) {
  out << "x,y,arrival_time\n";
  for (const Request& r : sequence.requests) {
    out << r.location.x << "," << r.location.y << "," << r.arrival_time << "\n";
  }
}

void write_sequence_file(const std::string& path, const RequestSequence& sequence) {
  std::ofstream out = open_output(path);
  write_sequence(out, sequence);
}

void write_log_csv(std::ostream& out, const AssignmentLog& log) {
  out << "request_index,x,y,facility_id,distance,arrival_time,commit_time\n";
  for (const AssignmentEvent& e : log.events()) {
    out << e.request_index << "," << e.location.x << "," << e.location.y << "," << e.facility_id << ","
        << e.distance_cost << "," << e.arrival_time << "," << e.commit_time << "\n";
  }
}

std::string batch_csv_row(std::size_t batch_id, const BatchRecord& batch) {
  return std::to_string(batch_id) + "," + to_string(batch.trigger) + "," +
         std::to_string(batch.request_indices.size()) + "," + std::to_string(batch.freeze_time) + "," +
         std::to_string(batch.batch_cost) + "," + format_fixed(batch.max_facility_share());
}

void write_batches_csv(std::ostream& out, std::span<const BatchRecord> batches, bool header) {
  if (header) out << "batch_id,trigger,size,freeze_time,batch_cost,max_facility_share\n";
  for (std::size_t i = 0; i < batches.size(); ++i) out << batch_csv_row(i, batches[i]) << "\n";
}

}  // namespace ofa
