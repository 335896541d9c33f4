#pragma once

#include <cstdint>
#include <utility>

#include "wmlab/instance.hpp"

namespace wmlab {

// Cohomology data of one stratum level Y^(t+1), a variety of dimension n - t:
// graded dims over cohomological degrees 0..2(n-t), the ample-class action,
// and the Poincare pairings H^m x H^{2(n-t)-m}.
struct StratumLevel {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> L;        // H^m -> H^{m+2}
    std::map<int, Matrix> pairing;  // gram of H^m x H^{2(n-t)-m}

    std::size_t dim(int m) const;
    Matrix L_at(int m, std::size_t next_dim) const;
};

struct StrataCohomology {
    int n = 0;
    std::vector<StratumLevel> levels;  // levels[t] carries column t
};

// Cech restriction and co-Cech Gysin maps between consecutive levels, plus
// the sign twist applied to rho when the differential is assembled.
struct TransitionMaps {
    std::vector<std::map<int, Matrix>> rho;    // rho[t]: H^m(lvl t) -> H^m(lvl t+1)
    std::vector<std::map<int, Matrix>> gamma;  // gamma[t]: H^m(lvl t+1) -> H^{m+2}(lvl t)
    std::vector<int> rho_twist;                // per column; +1 when absent
    std::vector<Rational> adjoint_sign;        // recorded epsilon per interface

    int twist(std::size_t t) const {
        return t < rho_twist.size() ? rho_twist[t] : 1;
    }
};

struct ValidationItem {
    std::string check;
    std::string location;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass = true;

    void add(const std::string& check, const std::string& location, bool pass,
             const std::string& detail = "");
    const ValidationItem* first_failure() const;
};

ValidationReport validate_strata(const StrataCohomology& strata, const TransitionMaps& trans);

// Builds the E1 instance; refuses invalid input and re-verifies every axiom
// on the output, including the bit-exact gamma/rho round trip.
RZInstance assemble(const StrataCohomology& strata, const TransitionMaps& trans);

// Cycle of r curves of the given genera over a disk; n = 1.
std::pair<StrataCohomology, TransitionMaps> gen_curve_cycle(std::size_t r,
                                                            const std::vector<std::size_t>& genera);

struct SimplicialComplex {
    std::vector<std::vector<int>> facets;
};

// Totally degenerate configuration: each t-simplex carries H(P^{n-t}); rho
// and gamma come from vertex-ordered signed incidence, Gysin coefficients
// from per-vertex normal-bundle weights solving the class relation.
std::pair<StrataCohomology, TransitionMaps> gen_combinatorial(const SimplicialComplex& complex,
                                                              int n);

struct JordanParams {
    std::size_t atoms = 3;
    int max_p = 2;
    int max_q = 2;
    // When false, only balanced bi-strings are drawn (wm verdict stays true).
    bool allow_pairs = true;
};

// Sum of (N, L) bi-strings plus cancelling differential pairs, conjugated by
// a random slotwise basis change; ground truth (H dims, wm verdict) stored
// in provenance.
RZInstance gen_random_jordan(std::uint64_t seed, const JordanParams& params);

// Replaces one column pairing so the canonical primitive pairing restricted
// to Im rho cap primitive becomes degenerate; global nondegeneracy kept.
RZInstance perturb_break_pairing(const RZInstance& inst, std::uint64_t seed);

// Provenance helpers shared with the CLI and the tests.
std::string encode_dims_table(const std::map<Slot, std::size_t>& dims);
std::map<Slot, std::size_t> decode_dims_table(const std::string& s);

}  // namespace wmlab
