#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "plap/conditions.hpp"
#include "plap/eigen.hpp"
#include "plap/grid.hpp"
#include "plap/problem.hpp"
#include "plap/verify.hpp"

namespace plap {

enum class CertificateKind { Subsolution, Supersolution };
enum class PowerVariant { A, B };
enum class Side { Left, Right };

std::string_view to_string(CertificateKind kind) noexcept;

/// Closed-form boundary piece: u1 on [a, x1] (Left) or u3 on [x0, b] (Right).
struct Profile {
  Side side = Side::Left;
  Interval support;
  double k = 1.0;
  double sigma = 0.0;
  std::function<double(double)> value;

  double operator()(double x) const { return value(x); }
  /// Value at the inner end, which is the maximum of these monotone pieces.
  double sup() const { return value(side == Side::Left ? support.b : support.a); }
};

/// u1 = (sigma ∫_a^x M-_{a,eps})^k (u3 mirrored), with k, sigma from variant A or B.
Profile power_profile(const Problem& prob, double tau, double eps, PowerVariant variant, Side side);
/// u1 = f^k, k = p/(p-1-q), f = (tau N/|c|)^{1/p} sinh((|c|/C_pq)^{1/p}(x - a)), N = |m-| + eps.
Profile sinh_profile(const Problem& prob, double tau, double eps, Side side);
/// As sinh_profile with f = sigma (e^{lambda (x - a)} - 1).
Profile exp_profile(const Problem& prob, double tau, double eps, Side side);
/// c == 0 limit of both: f = (tau N / C_pq)^{1/p} (x - a).
Profile linear_profile(const Problem& prob, double tau, double eps, Side side);
/// Profile family used by a theorem.
Profile side_profile(Theorem which, const Problem& prob, double tau, double eps, Side side);

/// Sampled on the grid nodes inside [a, x1]; throw tau-too-large when the maximum exceeds 1.
GridFunction build_u1_power(const Problem& prob, double tau, double eps, PowerVariant variant, const Grid& grid);
GridFunction build_u3_power(const Problem& prob, double tau, double eps, PowerVariant variant, const Grid& grid);
/// Also checks (C^{1/p} f')^2 - (|c|^{1/p} f)^2 = (tau N)^{2/p} at every node to 1e-10.
GridFunction build_u1_sinh(const Problem& prob, double tau, const Grid& grid, double eps = 0.0);
GridFunction build_u1_exp(const Problem& prob, double tau, const Grid& grid, double eps = 0.0);

struct GlueResult {
  GridFunction u;
  double x0_junction = 0.0;
  double x1_junction = 0.0;
};

/// Pieces to glue; an empty u1 / u3 is omitted (window touching the boundary).
struct GluePieces {
  std::function<double(double)> u1;
  std::function<double(double)> u2;
  std::function<double(double)> u3;
  Interval domain;
  Interval window;
};

/// u1 on [a, x0_], u2 on [x0_, x1_], u3 on [x1_, b]; the junctions are inserted as grid nodes.
/// Throws glue-failure when no crossing with u1' <= u2' (resp. u2' <= u3') exists.
GlueResult glue(const GluePieces& pieces, const Grid& grid);
/// Grid-function form: u1 on [a, x1], u2 on the window, u3 on [x0, b].
GlueResult glue(const std::optional<GridFunction>& u1, const GridFunction& u2, const std::optional<GridFunction>& u3,
                Interval domain);

/// s u with s = tau_effective^{-1/(p-1-q)}.
GridFunction rescale_certificate(const GridFunction& u, double tau_effective, const Problem& prob);
double rescale_factor(double tau_effective, const Problem& prob);

struct Provenance {
  std::string method;
  std::string family;
  double lambda1 = 0.0;
  double tau = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  bool tau_capped = false;
  double tau_effective = 0.0;
  double eps = 0.0;
  double k = 0.0;
  double sigma = 0.0;
  double x0_junction = 0.0;
  double x1_junction = 0.0;
  double scale = 1.0;
  bool has_left = false;
  bool has_right = false;
  int attempts = 0;
  // supersolution
  double v_sup = 0.0;
  double k_min = 0.0;
  double order_factor = 1.0;
};

struct Certificate {
  CertificateKind kind = CertificateKind::Subsolution;
  GridFunction u{Grid({0.0, 1.0}), {0.0, 0.0}};
  Provenance construction;
  std::optional<WeakCheck> verified;
};

Certificate build_subsolution(const Problem& prob, Theorem which, const Grid& grid, const EigenPair& eig);
Certificate build_subsolution(const Problem& prob, Theorem which, const Grid& grid);
/// w = k(v + 1), v solving the auxiliary problem with g = m+, k = (|v|_inf + 1)^{q/(p-1-q)}.
Certificate build_supersolution(const Problem& prob, const Grid& grid);

/// Multiplies the supersolution by powers of 2 until sub <= super at every node (sub and super
/// share a grid). Returns false if that did not happen within 64 doublings.
bool enforce_order(const Certificate& sub, Certificate& super);

/// Runs the matching weak check and stores it in cert.verified.
const WeakCheck& verify_certificate(Certificate& cert, const Problem& prob, double tol);

}  // namespace plap
