#pragma once

#include "wmlab/instance.hpp"
#include "wmlab/poly.hpp"

namespace wmlab {

// Commuting endomorphism acting blockwise on the instance slots; q records
// the residue field size (metadata, never asserted against eigenvalues).
struct FrobeniusOperator {
    std::map<Slot, Matrix> blocks;
    mpz_class q = 1;

    Matrix at(const BigradedModule& m, int i, int j) const;
};

// Exact commutation with N, L and d; throws CommutationFailed.
void validate_commutation(const BigradedModule& m, const Differential& d,
                          const FrobeniusOperator& g);

struct FactorizationClaim {
    struct Factor {
        Poly poly;
        std::size_t multiplicity = 1;
        bool irreducible_asserted = false;
    };
    std::vector<Factor> factors;
};

struct FactorReport {
    bool product_matches = false;
    bool pairwise_coprime = false;
    struct Item {
        Poly poly;
        std::size_t multiplicity;
        bool irreducible_checked;   // complete only for degree <= 3
        bool irreducible;           // meaningful when checked
        bool warned_unverified;     // degree >= 4 (or budget): claim echoed
    };
    std::vector<Item> items;
    bool ok() const { return product_matches && pairwise_coprime; }
};

// Product and coprimality verified exactly; irreducibility decided up to
// degree 3 by the rational-root test. Throws ProductMismatch / NotCoprime.
FactorReport validate_factorization(const Poly& p, const FactorizationClaim& claim);

// Canonical ordering used everywhere idempotents are built: ascending degree,
// then lexicographic on coefficients.
FactorizationClaim sort_claim(const FactorizationClaim& claim);

struct Idempotents {
    std::vector<Poly> r_polys;        // R_j with R_j(g) = pi_j
    std::vector<Matrix> projectors;   // on the whole module, block order of dims
    std::vector<std::map<Slot, Matrix>> blockwise;
};

// CRT idempotents; verifies pi^2 = pi, pi_j pi_k = 0, sum = 1, commutation
// with g, and char poly of g on Im pi_j equal to P_j^{m_j}.
// Throws MinPolyMismatch when min_poly(g) does not divide prod P_j^{m_j}.
Idempotents build_idempotents(const BigradedModule& m, const FrobeniusOperator& g,
                              const FactorizationClaim& claim);

// Total-space matrix of g (block diagonal over slots in map order).
Matrix total_matrix(const BigradedModule& m, const FrobeniusOperator& g);
Matrix total_matrix(const BigradedModule& m, const std::map<Slot, Matrix>& blocks);

// Minimal polynomial of g on the image of an idempotent; asserts equality
// with P_j when m_j = 1.
Poly min_poly_on_image(const BigradedModule& m, const FrobeniusOperator& g,
                       const Matrix& projector, const Poly& factor, std::size_t multiplicity);

// Characteristic polynomial of g restricted to a g-stable subspace of the
// total space; SelectorInvalid when the subspace is not stable.
Poly char_poly_on(const Matrix& g_total, const Subspace& stable);

struct MultiplicityReport {
    struct Row {
        int column, degree;
        Poly factor;
        std::size_t multiplicity_in_primitive;
        bool meets_im_rho;
        bool meets_im_gamma;
        bool degree_at_most_2;
    };
    std::vector<Row> rows;
    bool hypothesis = true;  // every factor meeting an intersection has mult 1
    bool factorization_complete = true;
};

// Per column and degree: factors of char poly of g on the primitive part,
// multiplicities, and whether they divide the char poly on the primitive
// intersections with Im rho / Im gamma.
MultiplicityReport multiplicity_one_report(const RZInstance& inst, const FrobeniusOperator& g);

// Bounded rational factorization: extracts rational roots and quadratic
// splits; leaves anything else whole with complete=false.
struct BoundedFactorization {
    std::vector<std::pair<Poly, std::size_t>> factors;
    bool complete = true;
};
BoundedFactorization factor_bounded(const Poly& p);

}  // namespace wmlab
