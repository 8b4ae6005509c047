#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lidskii/types.hpp"

namespace lidskii {

struct DenseOperator {
    CMatrix entries;
    std::string label;

    DenseOperator() = default;
    explicit DenseOperator(CMatrix m, std::string label = {});
    Eigen::Index dim() const { return entries.rows(); }
};

// Jordan data of a compact operator B. Columns of `basis` are the root
// vectors e_i grouped by eigenvalue, then by chain, eigenvector first.
// `biorthogonal` holds g_i = columns of (S^{-1})^*, so (e_i, g_j) = delta_ij.
struct JordanSpec {
    std::vector<cplx> eigenvalues;
    std::vector<std::vector<int>> chains;
    CMatrix basis;
    CMatrix biorthogonal;
    double condition = 1.0;

    int dim() const { return static_cast<int>(basis.cols()); }
    int count() const { return static_cast<int>(eigenvalues.size()); }
    // column index of the first vector of chain xi of eigenvalue q
    int offset(int q, int xi) const;
    int multiplicity(int q) const;
    int longest_chain() const;
    cplx characteristic(int q) const { return 1.0 / eigenvalues[q]; }
    // q indices sorted by |lambda_q| ascending (ties by argument)
    std::vector<int> order_by_modulus() const;
    std::vector<double> characteristic_moduli() const;
};

// Validates and completes a spec: distinct nonzero eigenvalues (relative 1e-8),
// chain lengths summing to dim, invertible basis.
JordanSpec make_jordan_spec(std::vector<cplx> eigenvalues, std::vector<std::vector<int>> chains,
                            CMatrix basis);

// Diagonal operator in mode space: W = diag(lambdas), B = diag(1/lambdas), S = I.
JordanSpec diagonal_spec(const std::vector<cplx>& characteristic_numbers);

// Diagonalizable path for arbitrary matrices: eigen-decomposition with a
// relative eigenvalue-separation guard.
JordanSpec spec_from_matrix(const CMatrix& b, double separation = 1e-6);

CMatrix jordan_matrix(const JordanSpec& spec);
DenseOperator build_jordan_operator(const JordanSpec& spec);

// (zeta I - B)^{-1} e_{q_xi + i} from the chain structure alone
CVector jordan_resolvent_chain(const JordanSpec& spec, cplx zeta, int q, int xi, int i);

// (I - lambda B)^{-1} with the spectrum cached so that poles are reported
// by value instead of surfacing as garbage from a singular solve.
class Resolvent {
public:
    explicit Resolvent(const DenseOperator& b, double pole_tol = 1e-8);
    // characteristic numbers known exactly (e.g. from a JordanSpec)
    Resolvent(const DenseOperator& b, std::vector<cplx> poles, double pole_tol = 1e-8);

    CVector apply(cplx lambda, const CVector& f) const;
    // B (I - lambda B)^{-1} f
    CVector apply_b(cplx lambda, const CVector& f) const;
    const std::vector<cplx>& characteristic_numbers() const { return poles_; }
    const CMatrix& matrix() const { return b_; }

private:
    void check_pole(cplx lambda) const;
    CMatrix b_;
    std::vector<cplx> poles_;
    double pole_tol_;
};

CVector resolvent_apply(const DenseOperator& b, cplx lambda, const CVector& f);

struct SectorGauge {
    double vertex = 0.0;
    double theta = pi / 2;
    int samples = 0;
    bool certified = false;
};

// Monte-Carlo numerical-range angle: seeded random unit vectors, the
// eigenvectors of B, and (when Re B - vertex > 0) the extremal directions
// of the pencil (Im B, Re B - vertex).
SectorGauge sector_gauge(const DenseOperator& b, double vertex, int samples,
                         std::uint64_t seed = 20240611);

// tan(theta) = max |eig(Im B, Re B - vertex)|; requires Re B - vertex > 0.
double sector_angle_exact(const CMatrix& b, double vertex = 0.0);

struct HermitianParts {
    DenseOperator re;
    DenseOperator im;
};
HermitianParts hermitian_components(const DenseOperator& b);

// descending
std::vector<double> singular_values(const CMatrix& b);
std::vector<double> singular_values(const DenseOperator& b);
// ascending for Hermitian input
std::vector<double> hermitian_eigenvalues(const CMatrix& h);
std::vector<cplx> eigenvalues(const CMatrix& b);

// Deterministic complex Gaussian matrices/vectors for seeded experiments.
CMatrix random_matrix(int rows, int cols, std::uint64_t seed);
CVector random_vector(int n, std::uint64_t seed);

}  // namespace lidskii
