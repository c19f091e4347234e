#include "rhomix/json_io.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

#include "json.hpp"
#include "rhomix/format.hpp"

namespace rhomix {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("malformed JSON");
  return j;
}

std::string ctx(const char* what, const std::string& detail) {
  return std::string(what) + ": " + detail;
}

void require_keys(const json& j, const char* what,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ValidationError(ctx(what, "expected a JSON object"));
  for (const char* k : required) {
    if (!j.contains(k)) {
      throw ValidationError(ctx(what, std::string("missing key '") + k + "'"));
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known) {
      throw ValidationError(ctx(what, "unknown key '" + it.key() + "'"));
    }
  }
}

double as_number(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(ctx(what, "expected a number"));
  return j.get<double>();
}

std::size_t as_count(const json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw ValidationError(ctx(what, "expected a nonnegative integer"));
  }
  if (j.is_number_integer() && j.get<long long>() < 0) {
    throw ValidationError(ctx(what, "expected a nonnegative integer"));
  }
  return j.get<std::size_t>();
}

std::vector<double> as_number_array(const json& j, const char* what) {
  if (!j.is_array()) {
    throw ValidationError(ctx(what, "expected an array of numbers"));
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(as_number(x, what));
  return out;
}

Complex as_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(ctx(what, "complex entries are [re, im] pairs"));
  }
  return Complex(as_number(j[0], what), as_number(j[1], what));
}

std::vector<Complex> as_complex_row(const json& j, const char* what) {
  if (!j.is_array()) {
    throw ValidationError(ctx(what, "expected an array of [re, im] pairs"));
  }
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(as_complex(x, what));
  return out;
}

ComplexMatrix as_complex_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(ctx(what, "expected a nonempty array of rows"));
  }
  std::vector<std::vector<Complex>> rows;
  rows.reserve(j.size());
  for (const auto& r : j) rows.push_back(as_complex_row(r, what));
  const std::size_t cols = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw ValidationError(ctx(what, "ragged rows"));
  }
  ComplexMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

// ---- emission helpers -----------------------------------------------------

std::string num(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

void append_num_array(std::string& s, const std::vector<double>& v) {
  s += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += num(v[i]);
  }
  s += ']';
}

void append_complex(std::string& s, Complex z) {
  s += '[';
  s += num(z.real());
  s += ',';
  s += num(z.imag());
  s += ']';
}

void append_complex_matrix(std::string& s, const ComplexMatrix& m) {
  s += '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += ',';
    s += '[';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ',';
      append_complex(s, m(r, c));
    }
    s += ']';
  }
  s += ']';
}

void append_states(std::string& s,
                   const std::vector<std::vector<Complex>>& states) {
  s += '[';
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) s += ',';
    s += '[';
    for (std::size_t j = 0; j < states[i].size(); ++j) {
      if (j) s += ',';
      append_complex(s, states[i][j]);
    }
    s += ']';
  }
  s += ']';
}

void append_real_matrix(std::string& s, const BistochasticMatrix& b) {
  s += '[';
  for (std::size_t r = 0; r < b.size(); ++r) {
    if (r) s += ',';
    s += '[';
    for (std::size_t c = 0; c < b.size(); ++c) {
      if (c) s += ',';
      s += num(b(r, c));
    }
    s += ']';
  }
  s += ']';
}

void append_chain_links(std::string& s, const ChainLinksReport& r) {
  s += "{\"satisfied\":";
  s += r.satisfied ? "true" : "false";
  s += ",\"worst_margin\":";
  s += num(r.worst_margin);
  s += ",\"violating_pair\":";
  if (r.violating_pair) {
    s += "{\"axis\":\"";
    s += r.violating_pair->axis == PairAxis::Column ? "column" : "row";
    s += "\",\"a\":";
    s += std::to_string(r.violating_pair->a);
    s += ",\"b\":";
    s += std::to_string(r.violating_pair->b);
    s += '}';
  } else {
    s += "null";
  }
  s += ",\"violating_links\":";
  if (r.violating_pair) {
    append_num_array(s, r.violating_links);
  } else {
    s += "null";
  }
  s += '}';
}

}  // namespace

// ---- parsers --------------------------------------------------------------

DensityMatrix parse_density_json(const std::string& text) {
  const json j = parse_text(text);
  require_keys(j, "density matrix", {"dim", "matrix"});
  const std::size_t dim = as_count(j["dim"], "density matrix dim");
  if (dim == 0) {
    throw ValidationError("density matrix: dim must be positive");
  }
  ComplexMatrix m = as_complex_matrix(j["matrix"], "density matrix");
  if (m.rows() != dim || m.cols() != dim) {
    throw ValidationError("density matrix: matrix shape does not match dim");
  }
  return DensityMatrix(std::move(m));
}

PureEnsemble parse_ensemble_json(const std::string& text) {
  const json j = parse_text(text);
  require_keys(j, "ensemble", {"weights", "states"});
  std::vector<double> w = as_number_array(j["weights"], "ensemble weights");
  if (!j["states"].is_array()) {
    throw ValidationError("ensemble: states must be an array of vectors");
  }
  std::vector<std::vector<Complex>> states;
  states.reserve(j["states"].size());
  for (const auto& s : j["states"]) {
    states.push_back(as_complex_row(s, "ensemble state"));
  }
  return PureEnsemble(ProbabilityVector(std::move(w)), std::move(states));
}

std::vector<double> parse_vector_json(const std::string& text) {
  return as_number_array(parse_text(text), "vector");
}

BistochasticMatrix parse_bistochastic_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_array() || j.empty()) {
    throw ValidationError("bistochastic matrix: expected an array of rows");
  }
  const std::size_t n = j.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& row : j) {
    const std::vector<double> r = as_number_array(row, "bistochastic matrix");
    if (r.size() != n) {
      throw ValidationError("bistochastic matrix: must be square");
    }
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return BistochasticMatrix(n, std::move(entries));
}

ConstructionOutcome parse_outcome_json(const std::string& text) {
  const json j = parse_text(text);
  require_keys(j, "outcome",
               {"weights", "states", "bistochastic", "unitary", "degenerate",
                "residual"});
  std::vector<double> w = as_number_array(j["weights"], "outcome weights");
  if (!j["states"].is_array()) {
    throw ValidationError("outcome: states must be an array of vectors");
  }
  std::vector<std::vector<Complex>> states;
  for (const auto& s : j["states"]) {
    states.push_back(as_complex_row(s, "outcome state"));
  }
  const std::size_t n = j["bistochastic"].is_array() ? j["bistochastic"].size() : 0;
  std::vector<double> bentries;
  for (const auto& row : j["bistochastic"]) {
    const std::vector<double> r = as_number_array(row, "outcome bistochastic");
    if (r.size() != n) {
      throw ValidationError("outcome: bistochastic matrix must be square");
    }
    bentries.insert(bentries.end(), r.begin(), r.end());
  }
  ComplexMatrix u = as_complex_matrix(j["unitary"], "outcome unitary");
  if (!is_unitary(u, 1e-10)) {
    throw NotUnitaryError("outcome: unitary fails the unitarity check");
  }
  if (!j["degenerate"].is_boolean()) {
    throw ValidationError("outcome: degenerate must be a boolean");
  }
  ConstructionOutcome out{
      PureEnsemble(ProbabilityVector(std::move(w)), std::move(states)),
      BistochasticMatrix(n, std::move(bentries)), std::move(u),
      j["degenerate"].get<bool>(), as_number(j["residual"], "outcome residual")};
  return out;
}

ExploreConfig parse_config_json(const std::string& text) {
  const json j = parse_text(text);
  require_keys(j, "config",
               {"trials", "m_min", "m_max", "n_min", "n_max", "algorithms"},
               {"master_seed", "tolerances"});
  ExploreConfig c;
  c.trials = as_count(j["trials"], "config trials");
  c.m_min = as_count(j["m_min"], "config m_min");
  c.m_max = as_count(j["m_max"], "config m_max");
  c.n_min = as_count(j["n_min"], "config n_min");
  c.n_max = as_count(j["n_max"], "config n_max");
  if (!j["algorithms"].is_array()) {
    throw ValidationError("config: algorithms must be an array of names");
  }
  for (const auto& a : j["algorithms"]) {
    if (!a.is_string()) {
      throw ValidationError("config: algorithms must be an array of names");
    }
    c.algorithms.push_back(a.get<std::string>());
  }
  if (j.contains("master_seed")) {
    if (!j["master_seed"].is_number_unsigned() &&
        !(j["master_seed"].is_number_integer() &&
          j["master_seed"].get<long long>() >= 0)) {
      throw ValidationError("config: master_seed must be a nonnegative integer");
    }
    c.master_seed = j["master_seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    require_keys(t, "config tolerances", {},
                 {"degeneracy", "certification", "sweep_target"});
    if (t.contains("degeneracy")) {
      c.tolerances.degeneracy = as_number(t["degeneracy"], "config degeneracy");
    }
    if (t.contains("certification")) {
      c.tolerances.certification =
          as_number(t["certification"], "config certification");
    }
    if (t.contains("sweep_target")) {
      c.tolerances.sweep_target =
          as_number(t["sweep_target"], "config sweep_target");
    }
  }
  return c;
}

// ---- emitters -------------------------------------------------------------

std::string density_to_json(const DensityMatrix& rho) {
  std::string s = "{\"dim\":";
  s += std::to_string(rho.ambient_dim());
  s += ",\"matrix\":";
  append_complex_matrix(s, rho.matrix());
  s += '}';
  return s;
}

std::string ensemble_to_json(const PureEnsemble& e) {
  std::string s = "{\"weights\":";
  append_num_array(s, e.weights.components());
  s += ",\"states\":";
  append_states(s, e.states);
  s += '}';
  return s;
}

std::string outcome_to_json(const ConstructionOutcome& out) {
  std::string s = "{\"weights\":";
  append_num_array(s, out.ensemble.weights.components());
  s += ",\"states\":";
  append_states(s, out.ensemble.states);
  s += ",\"bistochastic\":";
  append_real_matrix(s, out.bistochastic_used);
  s += ",\"unitary\":";
  append_complex_matrix(s, out.unitary_used);
  s += ",\"degenerate\":";
  s += out.degenerate ? "true" : "false";
  s += ",\"residual\":";
  s += num(out.residual);
  s += '}';
  return s;
}

std::string chain_links_to_json(const ChainLinksReport& r) {
  std::string s;
  append_chain_links(s, r);
  return s;
}

std::string unistochastic_report_to_json(const UnistochasticCertificate& cert,
                                         const ChainLinksReport& links) {
  std::string s = "{\"verdict\":\"";
  switch (cert.verdict) {
    case CertVerdict::Certified:
      s += "certified";
      break;
    case CertVerdict::Refuted:
      s += "refuted";
      break;
    case CertVerdict::Undetermined:
      s += "undetermined";
      break;
  }
  s += "\",\"residual\":";
  s += num(cert.residual);
  s += ",\"witness\":";
  if (cert.witness) {
    append_complex_matrix(s, *cert.witness);
  } else {
    s += "null";
  }
  s += ",\"chain_links\":";
  append_chain_links(s, links);
  s += '}';
  return s;
}

std::string majorize_report_to_json(bool majorized,
                                    const std::vector<double>& margins) {
  std::string s = "{\"majorizes\":";
  s += majorized ? "true" : "false";
  s += ",\"margins\":";
  append_num_array(s, margins);
  s += '}';
  return s;
}

std::string admissible_report_to_json(
    Admissibility verdict, const std::vector<double>& prefix_margins) {
  std::string s = "{\"verdict\":\"";
  s += to_string(verdict);
  s += "\",\"prefix_margins\":";
  append_num_array(s, prefix_margins);
  s += '}';
  return s;
}

std::string records_to_json(const std::vector<TrialRecord>& records) {
  std::string s = "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& r = records[i];
    if (i) s += ',';
    s += "{\"seed\":";
    s += std::to_string(r.seed);
    s += ",\"M\":";
    s += std::to_string(r.m);
    s += ",\"N\":";
    s += std::to_string(r.n);
    s += ",\"lambda\":";
    append_num_array(s, r.lambda);
    s += ",\"p\":";
    append_num_array(s, r.p);
    s += ",\"admissibility\":\"";
    s += to_string(r.admissibility);
    s += "\",\"algorithm\":\"";
    s += r.algorithm;
    s += "\",\"outcome\":\"";
    s += to_string(r.outcome);
    s += "\",\"residual\":";
    s += r.residual ? num(*r.residual) : "null";
    s += ",\"min_pair_gap\":";
    s += r.min_pair_gap ? num(*r.min_pair_gap) : "null";
    s += '}';
  }
  s += ']';
  return s;
}

std::string summary_to_json(std::size_t trials,
                            const std::vector<TrialRecord>& records) {
  const auto counts = summarize(records);
  std::string s = "{\"trials\":";
  s += std::to_string(trials);
  s += ",\"records\":";
  s += std::to_string(records.size());
  s += ",\"by_admissibility\":{";
  bool first_class = true;
  for (const auto& [cls, outcomes] : counts) {
    if (!first_class) s += ',';
    first_class = false;
    s += '"';
    s += cls;
    s += "\":{";
    bool first_outcome = true;
    for (const auto& [name, count] : outcomes) {
      if (!first_outcome) s += ',';
      first_outcome = false;
      s += '"';
      s += name;
      s += "\":";
      s += std::to_string(count);
    }
    s += '}';
  }
  s += "}}";
  return s;
}

}  // namespace rhomix
