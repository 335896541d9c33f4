#pragma once

#include <map>
#include <vector>

#include "wmlab/bilinear.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/subspace.hpp"

namespace wmlab {

// Finite graded vector space with a degree-2 operator L. Degrees of
// dimension zero are not stored; L maps into or out of them are implicitly
// zero-shaped.
class GradedModule {
public:
    GradedModule() = default;
    GradedModule(std::map<int, std::size_t> dims, std::map<int, Matrix> L_maps);

    std::size_t dim(int j) const;
    std::size_t total_dim() const;
    const std::map<int, std::size_t>& dims() const { return dims_; }
    std::vector<int> support() const;
    int min_degree() const;
    int max_degree() const;

    // L : M^j -> M^{j+2}; zero-shaped when either side is absent.
    Matrix L(int j) const;
    // L^k : M^j -> M^{j+2k}
    Matrix L_power(int j, std::size_t k) const;

private:
    std::map<int, std::size_t> dims_;
    std::map<int, Matrix> L_;
};

// Degree-m collection of component matrices M^j -> N^{j+m}; carries no
// linearity guarantee by itself (the Lambda operator lives here too).
struct GradedMap {
    int degree = 0;
    std::map<int, Matrix> comp;

    Matrix at(const GradedModule& from, const GradedModule& to, int j) const;
};

// L-linear graded morphism, validated eagerly.
struct GradedMorphism {
    int degree = 0;
    std::map<int, Matrix> comp;

    Matrix at(const GradedModule& from, const GradedModule& to, int j) const;
};

GradedMorphism make_morphism(const GradedModule& from, const GradedModule& to,
                             int degree, std::map<int, Matrix> components);

// Whether L^j : M^{n-j} -> M^{n+j} is bijective for all j > 0.
bool check_symmetric(const GradedModule& m, int n);

// Degree-reversing involution of section 4.1; components M^j -> M^{-j}.
struct StarOperator {
    std::map<int, Matrix> comp;
    Matrix at(const GradedModule& m, int j) const;
};

// Primitive decomposition of a 0-symmetric module.
struct LefschetzData {
    std::map<int, std::size_t> primitive_dims;  // j <= 0 -> dim Ker L^{|j|+1}
    std::map<int, Matrix> primitive_basis;      // canonical basis columns in M^j
    // (i, j): columns of L^i applied to the primitive basis of degree j,
    // landing in M^{j+2i}.
    std::map<std::pair<int, int>, Matrix> embeddings;

    struct Block {
        int primitive_degree;  // j0 <= 0, the home of the primitive generator
        std::size_t power;     // a with L^a 0M^{j0} inside M^{j0+2a}
        std::size_t offset;    // column offset inside the Lefschetz basis
        std::size_t size;
    };
    // Per degree: invertible matrix whose columns run through the blocks, and
    // the block table describing them.
    std::map<int, Matrix> lefschetz_basis;
    std::map<int, std::vector<Block>> block_table;

    Subspace primitive_subspace(int j, std::size_t ambient) const;
};

LefschetzData primitive_decomposition(const GradedModule& m);

// Im^0 f and the quotient data of Im^1 f for a degree-1 morphism.
struct ImageFiltration {
    std::map<int, Subspace> im;    // Im f per degree of N
    std::map<int, Subspace> im0;   // L-saturated primitive-meeting part
    std::map<int, std::size_t> im1_dims;
    std::map<int, QuotientMap> im1_projection;  // N^j -> N^j / Im0^j witness
};

ImageFiltration image_filtration(const GradedModule& from, const GradedModule& to,
                                 const GradedMorphism& f);

bool verify_lemma_1_2(const GradedModule& from, const GradedModule& to,
                      const GradedMorphism& f);

// Nondegenerate graded pairing M^j x M^{-j} -> Q with Phi(Lx, y) = Phi(x, Ly).
struct GradedPairing {
    std::map<int, Matrix> gram;  // j -> dim(j) x dim(-j)
    Matrix at(const GradedModule& m, int j) const;
};

GradedPairing make_pairing(const GradedModule& m, std::map<int, Matrix> grams);

// Checks Phi_N(f m, n) = c * Phi_M(m, g n) as exact matrix identities; throws
// DualityViolated with the witnessing degree and entry.
void check_duality(const GradedModule& M, const GradedModule& N,
                   const GradedMorphism& f, const GradedMorphism& g,
                   const GradedPairing& phiM, const GradedPairing& phiN,
                   const Rational& c);

struct Prop13Report {
    // per degree j: a = dim Im0 f^j, b = dim Im1 g^{j+1},
    //               c = dim Im0 g^j, d = dim Im1 f^{j+1}
    struct Row {
        std::size_t a, b, c, d;
    };
    std::map<int, Row> table;
    bool verdict = false;
};

Prop13Report prop13_dimension_report(const GradedModule& M, const GradedModule& N,
                                     const GradedMorphism& f, const GradedMorphism& g,
                                     const GradedPairing& phiM, const GradedPairing& phiN,
                                     const Rational& c);

struct Lemma14Result {
    bool hypothesis_holds = false;
    bool conclusion_holds = false;
};

Lemma14Result lemma14_check(const GradedModule& M, const GradedModule& N,
                            const GradedMorphism& f, const GradedMorphism& g,
                            const GradedPairing& phiM, const GradedPairing& phiN,
                            const Rational& c);

struct Prop15Report {
    bool ok = false;
    // Im f = Im0 f (+) f(Im0 g), and symmetrically; dims per degree.
    std::map<int, std::size_t> im0_f_dims, im1_f_summand_dims;
    std::map<int, std::size_t> im0_g_dims, im1_g_summand_dims;
    bool splittings_direct = false;       // (1.5.3)
    bool compositions_iso = false;        // (1.5.2)
    bool im_fg_equals_summand = false;    // (1.5.4)
    bool g_kills_im1_summand = false;
};

Prop15Report prop15_decompose(const GradedModule& M, const GradedModule& N,
                              const GradedMorphism& f, const GradedMorphism& g,
                              const GradedPairing& phiM, const GradedPairing& phiN,
                              const Rational& c);

bool prop16_check(const GradedModule& M, const GradedModule& N,
                  const GradedMorphism& f, const GradedMorphism& g,
                  const GradedPairing& phiM, const GradedPairing& phiN,
                  const Rational& c);

// *(L^a m) = (-1)^{i(i+1)/2} L^{k-a} m for m primitive of centered degree -k,
// where i = n - k is the cohomological degree of the primitive's home.
StarOperator star(const GradedModule& m, int n);

// Lambda(L^i m) = L^{i-1} m on primitives; degree -2, not L-linear.
GradedMap lambda_op(const GradedModule& m);

// (x, y) -> Phi(x, *y) on equal degrees.
std::map<int, BilinearForm> modified_pairing(const GradedModule& m,
                                             const GradedPairing& phi, int n);

struct TraceFormResult {
    GradedMap gamma_prime;  // degree 0
    Rational trace;
};

// Gamma' = star . Phi-transpose(Gamma) . star and Tr(Gamma' . Gamma).
TraceFormResult trace_form(const GradedModule& m, const GradedPairing& phi, int n,
                           const GradedMap& gamma);

// Adjoint g of f with Phi_N(f m, n) = c Phi_M(m, g n); g is automatically
// L-linear when f is and the pairings are L-compatible.
GradedMorphism phi_adjoint(const GradedModule& M, const GradedModule& N,
                           const GradedMorphism& f, const GradedPairing& phiM,
                           const GradedPairing& phiN, const Rational& c);

}  // namespace wmlab
