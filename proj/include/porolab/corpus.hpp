#pragma once

#include "porolab/set.hpp"

#include <string>
#include <vector>

namespace porolab {

/// The bundled corpus: a mix of laws, thickenings, bands and ratio tables
/// used by the verification suites and the acceptance run.
const std::string& corpus_text();
std::vector<SetSpec> corpus_specs();

}  // namespace porolab
