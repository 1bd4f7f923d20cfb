#pragma once

#include "porolab/set.hpp"

#include <cstddef>
#include <string>

namespace porolab {

/// Deterministic SVG of -ln E: blocks become filled "liquid" segments, gaps
/// become hollow "bubbles" whose length is ln(b/a); each bubble is annotated
/// with its exact ratio b/a. Log coordinates use 12 significant digits
/// (presentation only).
std::string render_svg(const AnySet& e, std::size_t depth, const std::string& title);

/// One-line ASCII ruler of the same picture: '#' liquid, '.' bubble.
std::string render_ascii(const AnySet& e, std::size_t depth, std::size_t width = 72);

}  // namespace porolab
