#include "flatpde/cli/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace flatpde::cli {

namespace {

std::string index_string(const Index& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + ")";
}

std::string render_json(const Report& r, bool with_timings) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["n"] = r.n;
  j["verdict"] = r.verdict;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& f : r.residual_summary)
    summary[f.family] = {{"entries", f.entries}, {"zero", f.entries - f.nonzero}, {"nonzero", f.nonzero}};
  j["residual_summary"] = std::move(summary);
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"family", w.family}, {"index", w.index}, {"expression", w.expression}});
  j["witnesses"] = std::move(witnesses);
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  for (const auto& [name, value] : r.outputs) outputs[name] = value;
  j["outputs"] = std::move(outputs);
  if (with_timings) {
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [phase, ms] : r.timings) t[phase] = ms;
    j["timings"] = std::move(t);
  }
  return j.dump() + "\n";
}

std::string render_text(const Report& r, bool with_timings) {
  std::ostringstream os;
  os << "command: " << r.command << "\nn: " << r.n << "\nverdict: " << r.verdict << "\n";
  if (r.command == "selftest") {
    for (const auto& f : r.residual_summary) os << f.family << " " << (f.nonzero ? "FAIL" : "ok") << "\n";
  } else if (!r.residual_summary.empty()) {
    std::size_t width = 6;
    for (const auto& f : r.residual_summary) width = std::max(width, f.family.size());
    os << "\n" << std::left << std::setw(static_cast<int>(width)) << "family" << "  " << std::right << std::setw(8)
       << "entries" << "  " << std::setw(8) << "nonzero" << "\n";
    for (const auto& f : r.residual_summary)
      os << std::left << std::setw(static_cast<int>(width)) << f.family << "  " << std::right << std::setw(8)
         << f.entries << "  " << std::setw(8) << f.nonzero << "\n";
  }
  if (!r.witnesses.empty()) {
    os << "\nwitnesses:\n";
    for (const auto& w : r.witnesses) os << "  " << w.family << " " << index_string(w.index) << ": " << w.expression << "\n";
  }
  if (!r.outputs.empty()) {
    os << "\n";
    for (const auto& [name, value] : r.outputs) os << name << " = " << value << "\n";
  }
  if (with_timings && !r.timings.empty()) {
    os << "\ntimings (ms):\n";
    for (const auto& [phase, ms] : r.timings) os << "  " << phase << " " << std::fixed << std::setprecision(3) << ms << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_report(const Report& r, Format format, bool with_timings) {
  return format == Format::json ? render_json(r, with_timings) : render_text(r, with_timings);
}

}  // namespace flatpde::cli
