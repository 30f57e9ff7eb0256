#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "ofa/assignment.hpp"
#include "ofa/bmcf.hpp"
#include "ofa/grid.hpp"

namespace ofa {

// Instance documents: {"rows": r, "cols": c, "facilities": [{"x", "y", "capacity"}, ...]}
// with 1-based integer coordinates.
GridInstance instance_from_json(const nlohmann::json& doc, const std::string& source = "instance");
nlohmann::json instance_to_json(const GridInstance& instance);
GridInstance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const GridInstance& instance);

// Sequence files are CSV with an optional "x,y,arrival_time" header. The
// arrival column may be omitted, in which case request i arrives at i
// (1-based). Blank lines and lines starting with '#' are ignored.
RequestSequence read_sequence(std::istream& in, const std::string& source = "sequence");
RequestSequence read_sequence_file(const std::string& path);
void write_sequence(std::ostream& out, const RequestSequence& sequence);
void write_sequence_file(const std::string& path, const RequestSequence& sequence);

// request_index,x,y,facility_id,distance,arrival_time,commit_time
void write_log_csv(std::ostream& out, const AssignmentLog& log);

// batch_id,trigger,size,freeze_time,batch_cost,max_facility_share
void write_batches_csv(std::ostream& out, std::span<const BatchRecord> batches, bool header = true);
std::string batch_csv_row(std::size_t batch_id, const BatchRecord& batch);

// Fixed 6-decimal formatting shared by every CSV writer.
std::string format_fixed(double value);

}  // namespace ofa
