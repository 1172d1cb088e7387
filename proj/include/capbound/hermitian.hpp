// SPDX-License-Identifier: MIT
//
// Dense complex linear algebra for Hermitian matrices: eigendecomposition,
// Schatten norms, tensor products, partial trace/transpose, random states.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace capbound {

using cxd = std::complex<double>;

// Shared numeric tolerances. Stated once, reused everywhere.
namespace tol {
inline constexpr double hermitian = 1e-12;  // entrywise Hermiticity, absolute
inline constexpr double psd = 1e-10;        // PSD / trace checks after sup-norm scaling
inline constexpr double choi_flag = 1e-9;   // CP/TP flags on Choi matrices
inline constexpr double jacobi = 1e-13;     // off-diagonal Frobenius mass vs ||M||_F
}  // namespace tol

class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Dense complex matrix, row-major.
class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static CMat identity(int n);
    static CMat zero(int rows, int cols) { return CMat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    cxd& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cxd& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    CMat operator*(const CMat& o) const;
    CMat operator*(cxd s) const;
    CMat operator-() const { return *this * cxd(-1.0, 0.0); }
    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);

    CMat adjoint() const;
    CMat transpose() const;
    CMat conjugate() const;
    cxd trace() const;
    double norm_fro() const;
    double norm_max() const;  // max_{jk} |a_jk|

    // largest asymmetry |a_jk - conj(a_kj)|
    double hermiticity_defect() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cxd> a_;
};

inline CMat operator*(cxd s, const CMat& m) { return m * s; }
CMat kron(const CMat& a, const CMat& b);

// Pauli matrices
CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

// Square complex matrix validated (and then exactly symmetrized) to be
// Hermitian within an absolute entrywise tolerance.
class HermitianMatrix {
public:
    explicit HermitianMatrix(CMat m, double tolerance = tol::hermitian);
    static HermitianMatrix diag(const std::vector<double>& d);
    static HermitianMatrix zero(int dim) { return HermitianMatrix(CMat::zero(dim, dim)); }
    static HermitianMatrix identity(int dim) { return HermitianMatrix(CMat::identity(dim)); }

    int dim() const { return m_.rows(); }
    const CMat& mat() const { return m_; }
    cxd operator()(int r, int c) const { return m_(r, c); }
    double trace_real() const { return m_.trace().real(); }

private:
    CMat m_;
};

struct EigResult {
    std::vector<double> eigenvalues;  // non-increasing
    CMat eigenvectors;                // columns; M = U diag(lambda) U^dagger
};

// Cyclic Jacobi eigendecomposition (complex Hermitian), adequate for the
// small dense matrices used throughout.
EigResult eig_hermitian(const HermitianMatrix& m);
std::vector<double> eigenvalues_of(const HermitianMatrix& m);

enum class SchattenP { One, Two, Inf };
double schatten_norm(const HermitianMatrix& m, SchattenP p);

// Positive semidefinite, unit trace (both within tolerance).
class DensityMatrix {
public:
    explicit DensityMatrix(HermitianMatrix m);
    static DensityMatrix pure(const std::vector<cxd>& psi);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return h_.dim(); }
    const HermitianMatrix& herm() const { return h_; }
    const CMat& mat() const { return h_.mat(); }

private:
    HermitianMatrix h_;
};

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double operator_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Bipartite dimension labels, ordering B (x) A as in the Choi convention.
struct BipartiteLabel {
    int dimB = 1;
    int dimA = 1;
    BipartiteLabel(int b, int a);
    int total() const { return dimB * dimA; }
    void check(int matrixDim) const;
};

enum class Subsystem { A, B };

// Partial trace over the named subsystem, fixed computational product basis.
CMat partial_trace(const CMat& m, const BipartiteLabel& label, Subsystem traced);
HermitianMatrix partial_trace(const HermitianMatrix& m, const BipartiteLabel& label,
                              Subsystem traced);

// Transpose over one tensor factor (default A, as in sigma^{T_A}); involutive.
CMat partial_transpose(const CMat& m, const BipartiteLabel& label,
                       Subsystem sub = Subsystem::A);
HermitianMatrix partial_transpose(const HermitianMatrix& m, const BipartiteLabel& label,
                                  Subsystem sub = Subsystem::A);

// Hilbert-Schmidt sample via normalized G G^dagger, G complex Gaussian.
DensityMatrix random_density(int dim, std::uint64_t seed);

// Maximally entangled |Omega><Omega| on C^d (x) C^d.
HermitianMatrix max_entangled_projector(int d);

}  // namespace capbound
