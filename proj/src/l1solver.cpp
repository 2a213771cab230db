// SPDX-License-Identifier: Apache-2.0
#include "srstap/l1solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace srstap {

void BpdnConfig::validate() const {
    if (!(epsilon >= 0.0)) throw ConfigError("solver: epsilon must be >= 0");
    if (max_iters < 1) throw ConfigError("solver: max_iters must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("solver: tol must be > 0");
    if (!(rho > 0.0)) throw ConfigError("solver: rho must be > 0");
    if (check_every < 1) throw ConfigError("solver: check_every must be >= 1");
}

BpdnConfig noise_matched_config(const RadarParams& p) {
    BpdnConfig cfg;
    cfg.epsilon = std::sqrt(static_cast<double>(p.dof()) * p.noise_power);
    return cfg;
}

BpdnNotConverged::BpdnNotConverged(SparseSpectrum last, double residual, double gap, std::size_t iterations)
    : NumericalError("BPDN did not converge after " + std::to_string(iterations) + " iterations (residual " +
                     std::to_string(residual) + ", relative gap " + std::to_string(gap) + ")"),
      last_(std::move(last)),
      residual_(residual),
      gap_(gap),
      iterations_(iterations) {}

namespace {

constexpr double kRelax = 1.8;  // over-relaxation factor

void soft_threshold(const CVector& v, double t, CVector& out) {
    out.resize(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        out[i] = mag > t ? v[i] * ((mag - t) / mag) : Complex(0.0, 0.0);
    }
}

// Best dual objective Re(y^H x) - eps ||y|| over the ray through `dir`,
// scaled to satisfy ||Psi^H y||_inf <= 1.
double dual_value(const CVector& dir, const CVector& psi_h_dir, const CVector& x, double eps) {
    const double peak = psi_h_dir.cwiseAbs().maxCoeff();
    if (!(peak > 0.0)) return -std::numeric_limits<double>::infinity();
    const double value = (dir.dot(x).real() - eps * dir.norm()) / peak;
    return value;
}

// Moves `alpha` along the least-squares correction restricted to its own
// support, just far enough to bring the residual onto the epsilon ball.
// Leaves both arguments untouched when the support cannot reach the ball.
void restore_feasibility(const Dictionary& d, double s_op, double eps, CVector& alpha, CVector& r) {
    std::vector<std::size_t> support;
    for (Eigen::Index i = 0; i < alpha.size(); ++i)
        if (alpha[i] != Complex(0.0, 0.0)) support.push_back(static_cast<std::size_t>(i));
    if (support.empty()) return;

    const CMatrix cols = d.columns(support) / s_op;
    const CVector delta = cols.completeOrthogonalDecomposition().solve(r);
    const CVector step = cols * delta;
    const double qa = step.squaredNorm();
    const double qb = r.dot(step).real();
    const double qc = r.squaredNorm() - eps * eps;
    const double disc = qb * qb - qa * qc;
    if (!(qa > 0.0) || disc < 0.0) return;
    const double c = (qb - std::sqrt(disc)) / qa;
    if (c < 0.0 || c > 1.0) return;

    for (std::size_t j = 0; j < support.size(); ++j)
        alpha[static_cast<Eigen::Index>(support[j])] += c * delta[static_cast<Eigen::Index>(j)];
    r -= c * step;
}

}  // namespace

BpdnResult solve_bpdn(const Dictionary& d, const CVector& x, const BpdnConfig& cfg) {
    cfg.validate();
    if (x.size() != d.rows()) throw DataError("solve_bpdn: snapshot length does not match dictionary rows");

    const Eigen::Index n = d.cols();
    const double x_norm = x.norm();
    BpdnResult result;
    result.spectrum.coeffs = CVector::Zero(n);
    if (x_norm <= cfg.epsilon) {
        result.residual_norm = x_norm;
        return result;
    }

    // Work in normalized units: ||x~|| = 1, ||Psi~||_2 = 1.
    const double s_op = d.spectral_norm();
    const double s_x = x_norm;
    const CVector xs = x / s_x;
    const double eps = cfg.epsilon / s_x;
    const double feas_limit = eps * (1.0 + cfg.tol) + 1e-3 * cfg.tol;
    const CMatrix gram = d.frame_operator() / (s_op * s_op);
    const Eigen::LLT<CMatrix> factor(CMatrix::Identity(gram.rows(), gram.cols()) + gram);

    auto fwd = [&](const CVector& v) -> CVector { return d.apply(v) / s_op; };
    auto adj = [&](const CVector& v) -> CVector { return d.apply_adjoint(v) / s_op; };
    auto project_ball = [&](const CVector& v) -> CVector {
        const CVector diff = v - xs;
        const double dn = diff.norm();
        return dn <= eps ? v : CVector(xs + diff * (eps / dn));
    };

    CVector beta = CVector::Zero(n);
    CVector u = CVector::Zero(n);
    CVector z = project_ball(CVector::Zero(xs.size()));
    CVector w = CVector::Zero(xs.size());
    CVector alpha(n), psi_alpha(xs.size()), beta_old(n), z_old(xs.size());

    double rho = cfg.rho / std::max(1e-300, adj(xs).cwiseAbs().maxCoeff());
    double last_gap = std::numeric_limits<double>::infinity();
    double last_resid = std::numeric_limits<double>::infinity();

    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
        const CVector q1 = beta - u;
        const CVector a = fwd(q1);
        const CVector b = z - w;
        const CVector y = factor.solve(a + gram * b);
        const CVector by = b - y;
        alpha = q1 + adj(by);
        psi_alpha = a + gram * by;

        const CVector alpha_hat = kRelax * alpha + (1.0 - kRelax) * beta;
        const CVector psi_alpha_hat = kRelax * psi_alpha + (1.0 - kRelax) * z;
        beta_old = beta;
        z_old = z;
        soft_threshold(alpha_hat + u, 1.0 / rho, beta);
        z = project_ball(psi_alpha_hat + w);
        u += alpha_hat - beta;
        w += psi_alpha_hat - z;

        const double r_primal = std::sqrt((alpha - beta).squaredNorm() + (psi_alpha - z).squaredNorm());
        const double r_dual = rho * std::sqrt((beta - beta_old).squaredNorm() + (z - z_old).squaredNorm());

        if (it % cfg.check_every == 0) {
            CVector cand = beta;
            CVector r = xs - fwd(cand);
            if (r.norm() > eps) restore_feasibility(d, s_op, eps, cand, r);
            const double resid = r.norm();
            const double primal = cand.cwiseAbs().sum();
            double dual = dual_value(r, adj(r), xs, eps);
            const CVector yw = -w;
            dual = std::max(dual, dual_value(yw, adj(yw), xs, eps));
            const double gap = primal > 0.0 ? (primal - dual) / primal : std::numeric_limits<double>::infinity();
            last_gap = gap;
            last_resid = resid * s_x;
            if (resid <= feas_limit && gap <= cfg.tol) {
                result.spectrum.coeffs = cand * (s_x / s_op);
                result.iterations = it;
                result.residual_norm = resid * s_x;
                result.objective = primal * s_x / s_op;
                result.dual_bound = dual * s_x / s_op;
                return result;
            }

            if (r_primal > 10.0 * r_dual) {
                rho *= 2.0;
                u /= 2.0;
                w /= 2.0;
            } else if (r_dual > 10.0 * r_primal) {
                rho /= 2.0;
                u *= 2.0;
                w *= 2.0;
            }
        }
    }
    throw BpdnNotConverged(SparseSpectrum{beta * (s_x / s_op)}, last_resid, last_gap, cfg.max_iters);
}

KktCertificate check_kkt(const Dictionary& d, const CVector& x, const BpdnConfig& cfg, const CVector& alpha) {
    if (x.size() != d.rows() || alpha.size() != d.cols())
        throw DataError("check_kkt: dimension mismatch between dictionary, snapshot and coefficients");

    KktCertificate c;
    const CVector r = x - d.apply(alpha);
    const CVector g = d.apply_adjoint(r);
    c.residual_norm = r.norm();
    c.feasibility_gap = std::max(0.0, c.residual_norm - cfg.epsilon);
    c.primal_objective = alpha.cwiseAbs().sum();

    const double g_peak = g.cwiseAbs().maxCoeff();
    const double feas_tol = cfg.tol * cfg.epsilon + 1e-12 * x.norm();
    const bool feasible = c.feasibility_gap <= feas_tol;

    if (c.primal_objective == 0.0) {
        c.dual_objective = 0.0;
        c.relative_gap = 0.0;
        c.passed = feasible;
        return c;
    }

    c.dual_objective = g_peak > 0.0 ? (r.dot(x).real() - cfg.epsilon * r.norm()) / g_peak
                                    : -std::numeric_limits<double>::infinity();
    c.relative_gap = (c.primal_objective - c.dual_objective) / c.primal_objective;

    const double align = alpha.dot(g).real();  // Re(alpha^H g)
    c.dual_scale = align > 0.0 ? c.primal_objective / align : 0.0;
    c.max_correlation = c.dual_scale * g_peak;

    const double a_peak = alpha.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        const double mag = std::abs(alpha[i]);
        if (mag < cfg.tol * a_peak || mag == 0.0) continue;
        ++c.support_size;
        const Complex gi = c.dual_scale * g[i];
        const Complex sgn = alpha[i] / mag;
        c.support_modulus_dev = std::max(c.support_modulus_dev, std::abs(std::abs(gi) - 1.0));
        c.support_phase_dev = std::max(c.support_phase_dev, 1.0 - (gi * std::conj(sgn)).real());
    }

    c.passed = feasible && align > 0.0 && c.max_correlation <= 1.0 + cfg.tol && c.support_modulus_dev <= cfg.tol &&
               c.support_phase_dev <= cfg.tol && c.relative_gap <= cfg.tol;
    return c;
}

}  // namespace srstap
