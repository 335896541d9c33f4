#pragma once

#include <map>
#include <string>

#include "wmlab/bigraded.hpp"

namespace wmlab {

// Assembled E1 datum: bigraded module, differential, its N-primitive columns,
// and (when the instance came from stratum data) the per-column pairings in
// column coordinates.
struct RZInstance {
    BigradedModule module;
    Differential differential;
    ColumnComplex columns;
    // pairings[column][j]: gram of C_col^j x C_col^{-j}
    std::map<int, std::map<int, Matrix>> pairings;
    int n = 0;
    std::map<std::string, std::string> provenance;

    bool has_pairings() const { return !pairings.empty(); }
    GradedPairing column_pairing(int column) const;
};

struct Thm02Result {
    bool hyp_rho = true;
    bool hyp_gamma = true;
    struct Item {
        int column, degree;
        char which;  // 'r' or 'g'
        std::size_t intersection_dim;
        bool nondegenerate;
    };
    std::vector<Item> items;
    std::string first_failure;
};

// Nondegeneracy of the canonical primitive pairing (Poincare composed with
// the hard Lefschetz power) on Im rho cap primitive and Im gamma cap
// primitive, per column and degree.
Thm02Result thm02_hypotheses(const RZInstance& inst);

struct RzResult {
    bool holds = true;
    struct Item {
        int column, degree;
        std::size_t im_rho_dim;
        bool nondegenerate;
    };
    std::vector<Item> items;
    std::string first_failure;
};

// Restriction of the modified pairing to Im rho, per column and degree.
RzResult rz_hypothesis(const RZInstance& inst);

struct Thm03Step {
    int i;
    bool low_j_injective = false;
    bool pos_j_injective = false;
    bool j0_injective = false;
    bool gamma_rho_gamma_zero = false;
    bool im_gamma_rho_one_symmetric = false;
    bool kernel_251_zero = false;
    bool criterion_16_matches = false;
    bool bijective_all_j = false;
};

struct Thm03Result {
    bool verdict = false;
    bool l_bijectivity = false;
    std::vector<Thm03Step> trace;
};

// Decreasing induction of section 2.5; throws HypothesisFailed naming the
// entry condition or the failing (i, sub-claim).
Thm03Result thm03_procedure(const RZInstance& inst, bool assume_low_j_injectivity);

}  // namespace wmlab
