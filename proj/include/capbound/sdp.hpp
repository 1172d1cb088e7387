// SPDX-License-Identifier: MIT
//
// Self-contained dense semidefinite-program solver for small block-structured
// problems: primal-dual path following with Nesterov-Todd scaling, Mehrotra
// predictor-corrector, dense normal-equation solves via Cholesky.
//
// Standard form (internal sense Minimize):
//   min <C, X>   s.t.  <A_i, X> = b_i,  X in (product of PSD and nonneg cones)
//   max b'y      s.t.  sum_i y_i A_i + S = C,  S in the dual cone.
//
// Complex Hermitian data enters through embed_complex; inner products double
// under the embedding, which callers account for (see norms.cpp).
#pragma once

#include <string>
#include <vector>

#include "capbound/hermitian.hpp"

namespace capbound {

// Dense real matrix, row-major.
class RMat {
public:
    RMat() = default;
    RMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static RMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    RMat operator+(const RMat& o) const;
    RMat operator-(const RMat& o) const;
    RMat operator*(const RMat& o) const;
    RMat operator*(double s) const;
    RMat& operator+=(const RMat& o);
    RMat transpose() const;
    double norm_fro() const;
    double norm_max() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

double dot(const RMat& a, const RMat& b);

struct SymEig {
    std::vector<double> values;  // ascending
    RMat vectors;                // columns
};
SymEig sym_eig(const RMat& m);

// Lower-triangular Cholesky factor; false if the matrix is not positive
// definite to working precision.
bool cholesky(const RMat& m, RMat& lower);

// [[Re, -Im], [Im, Re]] doubling; PSD is preserved both ways and Hilbert-
// Schmidt inner products scale by exactly 2.
RMat embed_complex(const HermitianMatrix& h);
HermitianMatrix unembed_complex(const RMat& m);

enum class BlockKind { Psd, NonNeg };
struct BlockSpec {
    BlockKind kind;
    int size;
};

struct SdpProblem {
    enum class Sense { Minimize, Maximize };
    Sense sense = Sense::Minimize;
    std::vector<BlockSpec> blocks;
    // objective coefficient per block; Psd: size x size symmetric, NonNeg:
    // size x 1. An empty RMat means zero.
    std::vector<RMat> objective;
    struct Constraint {
        std::vector<std::pair<int, RMat>> terms;  // (block index, coefficient)
        double rhs = 0.0;
    };
    std::vector<Constraint> constraints;

    int add_psd_block(int size);
    int add_nonneg_block(int size);
    void set_objective(int block, RMat coeff);
    void add_constraint(std::vector<std::pair<int, RMat>> terms, double rhs);
    void validate() const;
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, MaxIterations };
std::string to_string(SdpStatus s);

struct SdpSolution {
    SdpStatus status = SdpStatus::MaxIterations;
    double primalValue = 0.0;
    double dualValue = 0.0;
    double gap = 0.0;  // |primal - dual| / (1 + |primal|)
    double primalResidual = 0.0;
    double dualResidual = 0.0;
    int iterations = 0;
    std::vector<RMat> primalPoint;  // X per block
    std::vector<double> dualPoint;  // y (internal minimize sense)
    std::vector<RMat> dualSlack;    // S per block
};

struct SdpOptions {
    double feasTol = 1e-8;
    double gapTol = 1e-7;
    int maxIterations = 200;
};

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace capbound
