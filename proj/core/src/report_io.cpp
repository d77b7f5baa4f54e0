#include "zakharov/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zakharov/error.hpp"

namespace zakharov {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string norm_csv(const std::vector<NormRow>& rows) {
  std::ostringstream os;
  os << "run_id,norm_name,mu,q,s,sigma,T,value,truncation_diagnostic\n";
  for (const auto& r : rows)
    os << r.run_id << ',' << r.norm_name << ',' << format_number(r.mu) << ',' << format_number(r.q) << ','
       << format_number(r.s) << ',' << format_number(r.sigma) << ',' << format_number(r.T) << ','
       << format_number(r.value) << ',' << format_number(r.truncation_diagnostic) << '\n';
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << text;
  if (!out) throw NumericalError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_report(const std::filesystem::path& dir, const FitReport& report) {
  write_json(dir / (report.experiment + ".json"), report.to_json());
  write_text(dir / (report.experiment + ".csv"), report.to_csv());
}

}  // namespace zakharov
