#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmlab/graded.hpp"

namespace wmlab {

using Slot = std::pair<int, int>;  // (i, j) with M_i^j = M^{-i,j}

// Bigraded module with commuting N (index (-2, 0) on i) and L ((0, +2) on j),
// Lefschetz type in both indices.
class BigradedModule {
public:
    BigradedModule() = default;
    BigradedModule(std::map<Slot, std::size_t> dims, std::map<Slot, Matrix> N_maps,
                   std::map<Slot, Matrix> L_maps);

    std::size_t dim(int i, int j) const;
    std::size_t total_dim() const;
    const std::map<Slot, std::size_t>& dims() const { return dims_; }

    Matrix N(int i, int j) const;          // M_i^j -> M_{i-2}^j
    Matrix L(int i, int j) const;          // M_i^j -> M_i^{j+2}
    Matrix N_power(int i, int j, std::size_t k) const;
    Matrix L_power(int i, int j, std::size_t k) const;

    int min_i() const;
    int max_i() const;
    int min_j() const;
    int max_j() const;

private:
    std::map<Slot, std::size_t> dims_;
    std::map<Slot, Matrix> N_, L_;
};

// Throws NotLefschetzType naming the axis and index on violation.
void validate_bigraded(const BigradedModule& m);

struct Differential {
    std::map<Slot, Matrix> d;  // M_i^j -> M_{i-1}^{j+1}
    Matrix at(const BigradedModule& m, int i, int j) const;
};

// d^2 = 0 and commutation with N and L.
void validate_differential(const BigradedModule& m, const Differential& d);

// N-primitive columns C_i^j = Ker N^{i+1} in M_i^j with the gamma/rho
// components of d expressed in column coordinates.
struct ColumnComplex {
    std::map<Slot, std::size_t> C_dims;   // i >= 0
    std::map<Slot, Subspace> C;           // inclusion witness inside M_i^j
    std::map<Slot, Matrix> C_L;           // induced L: C_i^j -> C_i^{j+2}
    std::map<Slot, Matrix> gamma;         // C_i^j -> C_{i-1}^{j+1} (i > 0)
    std::map<Slot, Matrix> rho;           // C_i^j -> C_{i+1}^{j+1}
    int max_column = -1;

    std::size_t cdim(int i, int j) const;
    Matrix gamma_at(int i, int j) const;
    Matrix rho_at(int i, int j) const;
    Matrix C_L_at(int i, int j) const;
    Matrix C_L_power(int i, int j, std::size_t k) const;

    // The column C_i as a graded L-module in its own coordinates.
    GradedModule column_module(int i) const;
};

ColumnComplex n_primitive_columns(const BigradedModule& m);

// Fills gamma/rho; DecompositionFailed names the offending slot when d has a
// component outside C_{k-1} + N C_{k+1}.
void extract_gamma_rho(const BigradedModule& m, const Differential& d, ColumnComplex& cols);

struct Cohomology {
    std::map<Slot, std::size_t> H_dims;
    std::map<Slot, Subspace> Z, B;
    std::map<Slot, Matrix> reps;           // ambient columns, complement of B in Z
    std::map<Slot, Matrix> N_ind, L_ind;   // induced maps in representative coords
    bool euler_conserved = true;

    std::size_t hdim(int i, int j) const;
    Matrix N_at(int i, int j) const;
    Matrix L_at(int i, int j) const;
    Matrix N_power(int i, int j, std::size_t k) const;
};

Cohomology cohomology(const BigradedModule& m, const Differential& d);

// Induced N^i : H_i^j -> H_{-i}^j bijective?
bool check_N_bijectivity(const Cohomology& h, int i, int j);
bool check_N_surjectivity(const Cohomology& h, int i, int j);
bool check_N_injectivity(const Cohomology& h, int i, int j);

// Induced L^j : H_i^{-j} -> H_i^j for j > 0, per slot.
std::map<Slot, bool> check_L_bijectivity(const Cohomology& h);
bool L_bijectivity_holds(const Cohomology& h);

// d o N^{-i} restricted to cycles, projected to the C_{i-1} column; matrix in
// C_{i-1}^{j+1} coordinates acting on a basis of Z_{-i}^j.
struct DtildeResult {
    Matrix map;        // cdim(i-1, j+1) x dim Z_{-i}^j
    Matrix z_basis;    // the Z_{-i}^j basis the columns refer to
};
DtildeResult dtilde(const BigradedModule& m, const Differential& d,
                    const ColumnComplex& cols, int i, int j);

enum class CriterionVariant { I, II, III, IV };

struct CriterionResult {
    bool applicable = false;
    bool criterion_true = false;
    bool direct_truth = false;
};

CriterionResult criterion_2_2(const BigradedModule& m, const Differential& d,
                              const ColumnComplex& cols, const Cohomology& h,
                              int i, int j, CriterionVariant variant);

struct Filtration {
    std::size_t ambient_dim = 0;
    std::map<int, Subspace> steps;  // increasing; stabilizes to 0 and full

    Subspace step(int k) const;
    bool operator==(const Filtration& o) const;
};

// Unique W with N W_k in W_{k-2} and N^k : Gr_k ~ Gr_{-k}; computed by
// W_k = sum_j (Ker N^{k+j+1} cap Im N^j) and re-verified against the axioms.
Filtration monodromy_filtration(const Matrix& nilpotent);

struct WmReport {
    bool verdict = false;
    bool n_bijective_everywhere = false;  // path (a)
    bool filtrations_agree = false;       // path (b)
    bool l_bijectivity_holds = true;      // (2.1.4), reported
    std::string witness;                  // first failure found, if any
    std::vector<Rational> witness_vector;
};

WmReport wm_verdict(const BigradedModule& m, const Differential& d);
WmReport wm_verdict(const BigradedModule& m, const Differential& d, const Cohomology& h);

}  // namespace wmlab
