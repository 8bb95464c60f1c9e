#pragma once

namespace subplanck {

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
double hermite(int n, double x);

/// log|H_n(x)| without overflow; returns -inf at a root.
double log_abs_hermite(int n, double x);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x).
double laguerre(int n, double alpha, double x);

/// Airy function of the first kind.
double airy_ai(double x);

/// log|Ai(x)|, usable far into the decaying tail where Ai underflows.
double log_abs_airy_ai(double x);

/// log |psi_n(x)|^2 for the normalised oscillator eigenfunction.
double fock_log_density(int n, double x);

/// log |<m|D(alpha)|n>|^2 as a function of u = |alpha|^2.
double log_displaced_fock_overlap(int m, int n, double u);

}  // namespace subplanck
