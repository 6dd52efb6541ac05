#pragma once

#include <string>

#include "racgap/rac_core.hpp"

namespace racgap {

// JSONL trace format (format_version 1): an optional leading metadata line
//   {"format_version":1,"kind":"trace","seed":...,"model_tag":"..."}
// followed by one record per line
//   {"t":1,"a0":0,"a1":1,"y":0,"m":0,"b":0,"x":1,"kept":1}
// Ingestion also accepts a header-free CSV with the same column order
//   t,a0,a1,y,m,b,x,kept
// Errors carry "<path>:<line>:" diagnostics.
void write_trace_jsonl(const Trace& trace, const std::string& path);
Trace read_trace(const std::string& path);

}  // namespace racgap
