#include "rhomix/csv.hpp"

#include "rhomix/format.hpp"

namespace rhomix {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string join17(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt17(v[i]);
  }
  return out;
}

}  // namespace

void write_trials_csv(std::ostream& os,
                      const std::vector<TrialRecord>& records) {
  os << "seed,M,N,lambda,p,admissibility,algorithm,outcome,residual,"
        "min_pair_gap\n";
  for (const TrialRecord& r : records) {
    os << r.seed << ',' << r.m << ',' << r.n << ','
       << csv_escape(join17(r.lambda)) << ',' << csv_escape(join17(r.p)) << ','
       << to_string(r.admissibility) << ',' << r.algorithm << ','
       << to_string(r.outcome) << ',';
    if (r.residual) os << fmt17(*r.residual);
    os << ',';
    if (r.min_pair_gap) os << fmt17(*r.min_pair_gap);
    os << '\n';
  }
}

}  // namespace rhomix
