#pragma once

#include <string>
#include <vector>

#include "rhomix/ensembles.hpp"
#include "rhomix/explore.hpp"
#include "rhomix/stochmat.hpp"

namespace rhomix {

// Parsers. All take JSON text, throw ValidationError on malformed documents,
// wrong shapes, or unknown object keys, and run the full invariant checks of
// the type they build.
//
// Schema: complex scalar = [re, im]; matrix = array of row arrays;
// density matrix = {"dim": int, "matrix": [[..]]};
// ensemble = {"weights": [..], "states": [[[re,im], ..], ..]};
// vectors and real matrices = plain number arrays.
DensityMatrix parse_density_json(const std::string& text);
PureEnsemble parse_ensemble_json(const std::string& text);
std::vector<double> parse_vector_json(const std::string& text);
BistochasticMatrix parse_bistochastic_json(const std::string& text);
ConstructionOutcome parse_outcome_json(const std::string& text);
ExploreConfig parse_config_json(const std::string& text);

// Emitters. Numbers are printed with 17 significant digits; non-finite
// values become null. Every emitted document parses back with the matching
// parser above.
std::string density_to_json(const DensityMatrix& rho);
std::string ensemble_to_json(const PureEnsemble& e);
std::string outcome_to_json(const ConstructionOutcome& out);
std::string chain_links_to_json(const ChainLinksReport& r);
std::string unistochastic_report_to_json(const UnistochasticCertificate& cert,
                                         const ChainLinksReport& links);
std::string majorize_report_to_json(bool majorized,
                                    const std::vector<double>& margins);
std::string admissible_report_to_json(Admissibility verdict,
                                      const std::vector<double>& prefix_margins);
std::string records_to_json(const std::vector<TrialRecord>& records);
std::string summary_to_json(std::size_t trials,
                            const std::vector<TrialRecord>& records);

}  // namespace rhomix
