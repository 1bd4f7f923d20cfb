#pragma once

#include "porolab/dsl.hpp"
#include "porolab/set.hpp"

#include <string>

namespace porolab::testing {

inline Rat q(long n, long d = 1) { return Rat(n, d); }

inline Rat rat(const std::string& s) { return *Rat::parse(s); }

inline AnySet make(const std::string& dsl_text) { return elaborate(parse_spec(dsl_text)); }

inline GermSet germ(const std::string& dsl_text) { return std::get<GermSet>(make(dsl_text)); }

inline FiniteSet finite(const std::string& dsl_text) { return std::get<FiniteSet>(make(dsl_text)); }

// The running examples used throughout the suites.
inline GermSet f1() { return germ("set F1 { shape = points(power(alpha=2, x0=1/2)) }"); }
inline GermSet f2() { return germ("set F2 { shape = thicken(power(alpha=2, x0=1/2), q=3) }"); }
inline GermSet f3() { return germ("set F3 { shape = bands(power(alpha=2, x0=1/2)) }"); }
inline GermSet geo_half() { return germ("set G { shape = points(geometric(r=1/2)) }"); }
inline GermSet f5() {
    return germ("set F5 { shape = ratio_gaps(diagpow[2], cycle[1], seed=1) }");
}

}  // namespace porolab::testing
