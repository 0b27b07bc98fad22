#include "hexcpg/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hexcpg/errors.hpp"

namespace hexcpg {

namespace {

constexpr int kCsvDecimals = 6;

std::vector<std::string> split(const std::string& line, char sep, std::size_t max_fields = 0) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    if (max_fields != 0 && out.size() + 1 == max_fields) {
      out.push_back(line.substr(start));
      break;
    }
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double to_double(const std::string& s, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

std::string trace_header(std::size_t n) {
  std::string h = "t";
  for (const char* prefix : {"theta", "phi", "r", "x"}) {
    for (std::size_t i = 1; i <= n; ++i) h += std::string(",") + prefix + "_" + std::to_string(i);
  }
  return h;
}

std::string format_fixed(double value, int decimals) {
  const double half_ulp = 0.5 * std::pow(10.0, -decimals);
  if (std::abs(value) < half_ulp) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << trace_header(trace.n) << '\n';
  std::string row;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    row = format_fixed(trace.time[k], kCsvDecimals);
    const auto& s = trace.states[k];
    for (std::size_t i = 0; i < trace.n; ++i) row += "," + format_fixed(trace.theta[k][i], kCsvDecimals);
    for (std::size_t i = 0; i < trace.n; ++i) row += "," + format_fixed(s[i].phi, kCsvDecimals);
    for (std::size_t i = 0; i < trace.n; ++i) row += "," + format_fixed(s[i].r, kCsvDecimals);
    for (std::size_t i = 0; i < trace.n; ++i) row += "," + format_fixed(s[i].x, kCsvDecimals);
    out << row << '\n';
  }
}

Trace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace: empty file");
  strip_cr(line);
  const auto cols = split(line, ',');
  if (cols.size() < 5 || (cols.size() - 1) % 4 != 0) {
    throw ParseError("line 1: header has " + std::to_string(cols.size()) + " columns");
  }
  Trace trace;
  trace.n = (cols.size() - 1) / 4;
  if (line != trace_header(trace.n)) {
    throw ParseError("line 1: header does not match '" + trace_header(trace.n) + "'");
  }
  const std::size_t n = trace.n;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != cols.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols.size()) + " fields, got " + std::to_string(f.size()));
    }
    NetworkState state(n);
    std::vector<double> theta(n);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] = to_double(f[1 + i], line_no);
      state[i].phi = to_double(f[1 + n + i], line_no);
      state[i].r = to_double(f[1 + 2 * n + i], line_no);
      state[i].x = to_double(f[1 + 3 * n + i], line_no);
    }
    trace.time.push_back(to_double(f[0], line_no));
    trace.theta.push_back(std::move(theta));
    trace.states.push_back(std::move(state));
  }
  if (trace.size() >= 2) trace.dt = trace.time[1] - trace.time[0];
  return trace;
}

void write_events_sidecar(const std::vector<EventMarker>& markers, std::ostream& out) {
  out << "time_s,kind,details\n";
  for (const auto& m : markers) {
    out << format_fixed(m.time, kCsvDecimals) << ',' << m.kind << ',' << m.details << '\n';
  }
}

std::vector<EventMarker> read_events_sidecar(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("events: empty file");
  strip_cr(line);
  if (line != "time_s,kind,details") throw ParseError("events line 1: unexpected header");
  std::vector<EventMarker> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',', 3);
    if (f.size() != 3) throw ParseError("events line " + std::to_string(line_no) + ": expected 3 fields");
    EventMarker m;
    m.time = m.requested_time = to_double(f[0], line_no);
    m.kind = f[1];
    m.details = f[2];
    out.push_back(std::move(m));
  }
  return out;
}

std::string sidecar_path(const std::string& trace_path) {
  const std::string ext = ".csv";
  if (trace_path.size() >= ext.size() &&
      trace_path.compare(trace_path.size() - ext.size(), ext.size(), ext) == 0) {
    return trace_path.substr(0, trace_path.size() - ext.size()) + ".events.csv";
  }
  return trace_path + ".events.csv";
}

void save_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_trace_csv(trace, out);
  std::ofstream events(sidecar_path(path), std::ios::binary);
  if (!events) throw std::runtime_error("cannot write " + sidecar_path(path));
  write_events_sidecar(trace.markers, events);
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Trace trace = read_trace_csv(in);
  std::ifstream events(sidecar_path(path), std::ios::binary);
  if (events) trace.markers = read_events_sidecar(events);
  return trace;
}

}  // namespace hexcpg
