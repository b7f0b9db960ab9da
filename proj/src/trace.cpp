#include "gsco/trace.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "gsco/error.hpp"

namespace gsco {

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::Converged:
      return "converged";
    case Termination::MaxIterations:
      return "max_iters";
    case Termination::Stationary:
      return "stationary";
  }
  return "unknown";
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  out << kTraceCsvHeader << '\n';
  char buf[64];
  for (const auto& r : trace.records) {
    out << r.t << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.eta);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.objective);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.captured_norm);
    out << buf << ',' << r.support_size << ',' << r.shrinks << ',' << r.wall_ns << '\n';
  }
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad trace field '" + std::string(text) + "'", line_no);
  }
  return value;
}

}  // namespace

IterationTrace read_trace_csv(std::istream& in) {
  IterationTrace trace;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw ParseError("missing trace header", 1);
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 7) {
      throw ParseError("expected 7 trace fields", line_no);
    }
    IterationRecord r;
    r.t = parse_field<std::size_t>(fields[0], line_no);
    r.eta = parse_field<double>(fields[1], line_no);
    r.objective = parse_field<double>(fields[2], line_no);
    r.captured_norm = parse_field<double>(fields[3], line_no);
    r.support_size = parse_field<std::size_t>(fields[4], line_no);
    r.shrinks = parse_field<std::size_t>(fields[5], line_no);
    r.wall_ns = parse_field<std::int64_t>(fields[6], line_no);
    trace.records.push_back(r);
  }
  return trace;
}

}  // namespace gsco
