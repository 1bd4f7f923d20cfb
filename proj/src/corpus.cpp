#include "porolab/corpus.hpp"

#include "porolab/dsl.hpp"

namespace porolab {

const std::string& corpus_text() {
    static const std::string text = R"CORPUS(# bundled verification corpus
set F1 { shape = points(power(alpha=2, x0=1/2)) }
set F2 { shape = thicken(power(alpha=2, x0=1/2), q=3) }
set F3 { shape = bands(power(alpha=2, x0=1/2)) }
set geo_half { shape = points(geometric(r=1/2)) }
set geo_two_thirds { shape = points(geometric(r=2/3)) }
set geo_slow { shape = points(geometric(r=9/10)) }
set geo_thick { shape = thicken(geometric(r=1/10), q=2) }
set F5 { shape = ratio_gaps(diagpow[2], cycle[1], seed=1) }
set diag3 { shape = ratio_gaps(diagpow[3], cycle[1], seed=2) }
set fact { shape = points(factorial(scale=1)) }
set fact_scaled { shape = points(factorial(scale=7/5)) }
set fact_thick { shape = thicken(factorial(scale=1), q=5/2) }
set fact_bands { shape = bands(factorial(scale=1)) }
set pow3 { shape = points(power(alpha=3, x0=1/2)) }
set pow3_thick { shape = thicken(power(alpha=3, x0=1/3), q=4) }
set pow2_bands { shape = bands(power(alpha=2, x0=1/3)) }
set rg_csp16 { shape = ratio_gaps(interleave[pow[16]; cycle[2]], cycle[1], seed=1) }
set rg_csp32 { shape = ratio_gaps(interleave[pow[32]; cycle[3]], cycle[1], seed=3/2) }
set rg_bounded { shape = ratio_gaps(cycle[2, 3], cycle[1], seed=1) }
set rg_thickblocks { shape = ratio_gaps(pow[8], cycle[2], seed=1) }
set table_const { shape = points(ratio_table(list[1/2, 1/4])) }
set table_cycle { shape = points(ratio_table(cycle[1/2, 1/3])) }
set table_open { shape = points(ratio_table(list[1/2, 1/4, ...])) }
set table_vanish { shape = points(ratio_table(pow[2/3])) }
set fin { shape = blocks([1/4,1/2; 1,2;]) }
)CORPUS";
    return text;
}

std::vector<SetSpec> corpus_specs() { return parse_specs(corpus_text()); }

}  // namespace porolab
