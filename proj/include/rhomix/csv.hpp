#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rhomix/explore.hpp"

namespace rhomix {

// RFC-4180 field quoting: wraps in double quotes when the value contains a
// comma, quote, or newline; embedded quotes are doubled.
std::string csv_escape(const std::string& field);

// One row per record, LF line endings, header row first.
void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records);

}  // namespace rhomix
