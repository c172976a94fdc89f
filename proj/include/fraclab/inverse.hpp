#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fraclab/numcore.hpp"

namespace fraclab {

/// One mode of the Dirichlet Laplacian sine basis on (0, 1):
/// lambda = (index*pi)^2 and a coefficient against phi_index.
struct SpectralData {
    int index = 1;
    double lambda = 0.0;
    double coefficient = 0.0;
};

/// Builds modes 1..coefficients.size() with exact eigenvalues (j pi)^2.
std::vector<SpectralData> sine_modes(const std::vector<double>& coefficients);

/// Critical time T* of mode J: the root of
///   D(t) = e^{-lambda_J t} - E_{alpha,1}(-lambda_J t^alpha),  lambda_J = (J pi)^2,
/// located by bisection on the bracket then Newton polish, absolute tolerance
/// 1e-6 (the polished residual is driven below 1e-10). Before T* the
/// fractional backward problem is the harder one, after T* the classical one.
double critical_time(double alpha, int j_mode, double t_lo, double t_hi);

/// Worst-case amplification of the first J modes when solving backward over
/// time T: classical e^{lambda_J T} against fractional 1/E_{alpha,1}(-lambda_J T^alpha).
struct GrowthFactors {
    double classical = 1.0;
    double fractional = 1.0;
};

GrowthFactors growth_factors(double alpha, int j_mode, double T);

/// Backward diffusion in the sine basis: divides each data coefficient
/// (g, phi_j) by E_{alpha,1}(-lambda_j T^alpha).
std::vector<SpectralData> backward_reconstruct(double alpha, double T,
                                               const std::vector<SpectralData>& data);

/// Space-dependent source from final-time data in the sine basis: multiplies
/// each data coefficient by lambda_j / (1 - E_{alpha,1}(-lambda_j T^alpha)).
std::vector<SpectralData> source_space_reconstruct(double alpha, double T,
                                                   const std::vector<SpectralData>& data);

/// Iterates of the inverse-potential fixed point together with the relative
/// L2 size of each update step.
struct PotentialRecovery {
    std::vector<std::vector<double>> iterates; // q^0, q^1, ..., nodal values
    std::vector<double> step_changes;          // ||q^{k+1} - q^k|| / ||q^{k+1}||
};

/// Fixed point for the potential in d_t^alpha u - u_xx + q u = 0 with
/// homogeneous Neumann data and initial values v, driven by final-time data
/// g on the nodes:
///   q^{k+1} = (g'' - d_t^alpha u(., T; q^k)) / g.
/// g'' uses central differences inside and one-sided second-order stencils at
/// the boundary; the time derivative at T applies the L1 memory formula to
/// the stored history of the forward solve. q0 is the initial guess (empty
/// means zero). Throws domain_error when |g| < g_min anywhere.
PotentialRecovery potential_fixed_point(double alpha, double T, const Grid1D& grid, int n_steps,
                                        const std::vector<double>& g, const std::vector<double>& v,
                                        const std::vector<double>& q0, int iterations,
                                        double g_min = 1e-6);

/// One application of the Jones operator
///   (T a)(t) = sqrt(pi) g(t) / int_0^t psi'(tau) [int_tau^t a(s) ds]^{-1/2} dtau
/// on a uniform time grid over [0, T]: g and psi are node samples (size K+1,
/// psi(0) = 0), a holds one constant value per cell (size K). The weakly
/// singular inner factor is integrated exactly against piecewise-linear psi'
/// and piecewise-constant a; the result samples (T a)(t) at the right node of
/// every cell.
std::vector<double> jones_apply(const std::vector<double>& g, const std::vector<double>& psi,
                                double T, const std::vector<double>& a);

/// Jones fixed-point iterates with clamping to [inf h^2, sup h^2], where
/// h(t) = sqrt(pi) g(t) / int_0^t (t-tau)^{-1/2} psi'(tau) dtau is the ratio
/// of the flux to the half-order derivative of the temperature data. The
/// initial iterate is h^2 itself.
struct JonesResult {
    std::vector<std::vector<double>> iterates; // a^0, a^1, ..., cell values
    std::vector<double> h_samples;             // h at nodes 1..K
    double clamp_lo = 0.0;                     // (inf h)^2
    double clamp_hi = 0.0;                     // (sup h)^2
};

JonesResult jones_fixed_point(const std::vector<double>& g, const std::vector<double>& psi,
                              double T, int iterations);

/// Which fractional Sturm-Liouville operator the q = 0 spectrum belongs to.
enum class SturmVariant { caputo, riemann_liouville };

/// One eigenpair: the eigenvalue and a sampler of its eigenfunction on [0, 1].
struct SturmLiouvilleMode {
    Cplx lambda;
    std::function<Cplx(double)> eigenfunction;
};

/// q = 0 spectra on (0, 1) with u(0) = u(1) = 0 for order beta in (1, 2]:
/// caputo eigenvalues are the zeros of E_{beta,2}(-lambda) with eigenfunctions
/// x E_{beta,2}(-lambda x^beta); the riemann_liouville variant uses zeros of
/// E_{beta,beta}(-lambda) and x^{beta-1} E_{beta,beta}(-lambda x^beta). Every
/// returned eigenfunction is checked to vanish at x = 1 to 1e-8.
std::vector<SturmLiouvilleMode> sturm_liouville_spectrum(double beta, SturmVariant variant,
                                                         int count);

/// Data size against interior solution size for the separated solutions of
/// the fractional elliptic Cauchy problem: data_norm is the sup of
/// |x E_{beta,2}(-lambda_j x^beta) / lambda_j| over a node grid, and
/// solution_magnitude is |u_j(1/2, y)| with
/// u_j(x, y) = x E_{beta,2}(-lambda_j x^beta) y E_{beta,2}(lambda_j y^beta) / lambda_j^2.
/// As j grows the data shrinks while the solution at fixed height y blows up.
struct CauchyGrowthSample {
    double data_norm = 0.0;
    double solution_magnitude = 0.0;
};

CauchyGrowthSample cauchy_growth_demo(double beta, int j, double y);

/// Singular-value summary of one forward map, ready for CSV export.
struct ConditioningReport {
    std::string label;
    double order = 0.0; // alpha or beta of the underlying problem
    double T = 0.0;
    int n = 0;
    int K = 0;
    std::vector<double> singular_values;
    double cond = 1.0;
    int numerical_rank = 0;
};

ConditioningReport conditioning_report(const DenseMatrix& map, const std::string& label,
                                       double order, double T, int n, int K,
                                       double rank_tol = 1e-12);

/// One row per singular value: label, order, T, n, K, index, sigma.
void write_spectrum_csv(const ConditioningReport& report, const std::string& path);

/// One row per report: label, order, T, n, K, cond, rank.
void write_summary_csv(const std::vector<ConditioningReport>& reports, const std::string& path);

} // namespace fraclab
