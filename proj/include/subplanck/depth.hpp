#pragma once

#include <string>

#include "subplanck/distill.hpp"
#include "subplanck/phonon.hpp"
#include "subplanck/states.hpp"

namespace subplanck {

enum class WitnessKind { SubPlanck, SubPlanckAsymptotic, WignerNegativity, Fano };

struct DepthResult {
  WitnessKind witness = WitnessKind::SubPlanck;
  int layers = 0;  // meaningful for the finite-copy witness
  double nbar_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;

  std::string witness_label() const;
};

struct DepthOptions {
  bool asymptotic = true;  // P/|P''| witness instead of the finite-copy pipeline
  double nbar_max = 2.0;
  int sweep_points = 9;
  double tol = 1e-3;
  GridSpec grid{};
};

/// Distillable variance of the thermalised state: the asymptotic estimate or
/// the finite-copy min_variance. Returns +inf where the maximum is flat.
double subplanck_witness(const StateSpec& spec, const DistillConfig& cfg, double nbar, const DepthOptions& options);

DepthResult subplanck_depth(const StateSpec& spec, const DistillConfig& cfg, const DepthOptions& options = {});

/// Wigner function of the thermalised Fock state at the origin, by radial quadrature.
double thermal_fock_wigner_origin(int n, double nbar);

/// Closed form of the thermalised Fock Wigner function at phase-space radius rho.
double thermal_fock_wigner(int n, double nbar, double rho);

/// Sign-carrying witness: negative while the thermalised Fock Wigner function
/// has a negative region, nonnegative otherwise. The vanishing amplitude
/// ((1-2 nbar)/(1+2 nbar))^n is divided out so the sign stays resolvable.
double wigner_negativity_witness(int n, double nbar);

DepthResult wigner_negativity_depth(int n);

/// Populations of M_nbar(|n><n|) for m = 0..cutoff.
PhononDistribution thermal_fock_number_distribution(int n, double nbar, int cutoff);

/// Same with a cutoff grown until the truncated mass is below 1e-8.
PhononDistribution thermal_fock_number_distribution(int n, double nbar);

DepthResult fano_depth(int n);

}  // namespace subplanck
