#pragma once

// Trace CSV format:
//
//   t,theta_1,...,theta_n,phi_1,...,phi_n,r_1,...,r_n,x_1,...,x_n
//
// Values are written with six decimal places; phi in rad, theta/r/x in deg.
// Rate columns are not part of the format and read back as zero.
//
// Events sidecar: header `time_s,kind,details`, one line per applied event.

#include <iosfwd>
#include <string>
#include <vector>

#include "hexcpg/sim.hpp"

namespace hexcpg {

std::string trace_header(std::size_t n);

/// Fixed-point formatting without a "-0" for values that round to zero.
std::string format_fixed(double value, int decimals);

void write_trace_csv(const Trace& trace, std::ostream& out);
Trace read_trace_csv(std::istream& in);

void write_events_sidecar(const std::vector<EventMarker>& markers, std::ostream& out);
std::vector<EventMarker> read_events_sidecar(std::istream& in);

/// "runs/trace.csv" -> "runs/trace.events.csv".
std::string sidecar_path(const std::string& trace_path);

void save_trace(const Trace& trace, const std::string& path);
Trace load_trace(const std::string& path);

}  // namespace hexcpg
