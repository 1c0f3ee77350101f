#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cnslab/littlewood_paley.hpp"

namespace cnslab {

/// Homogeneous Besov semi-norm parameters: regularity s, integrability p,
/// summation index r (p, r may be +infinity).
struct NormSpec {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;
};

/// Hybrid norm: blocks with 2^j <= R0 measured in B^s_{r_low,1}, blocks with
/// 2^j > R0 in B^t_{p_high,1}.
struct HybridSpec {
  double s = 0.5;
  double t = 1.5;
  double r_low = 2.0;
  double p_high = 2.0;
  double R0 = 1.0;
};

using NormKey = std::variant<NormSpec, HybridSpec>;

/// "besov:s=<>,p=<>,r=<>" or "hybrid:s=<>,t=<>,r=<>,p=<>,R0=<>".
NormKey parse_norm_key(const std::string& text);
std::string to_string(const NormKey& key);
std::string format_number(double v);

/// Throws ConfigError for p < 1, r < 1 or R0 not a power of two.
void validate(const NormSpec& spec);
void validate(const HybridSpec& spec);
/// log2(R0); R0 must be 2^j0 for an integer j0.
int split_index(double R0);

/// ||Delta_j f||_{L^p} for every j in the active range (index j - j_min).
std::vector<double> block_lp_norms(const Field& f, double p, const CutoffProfile& profile = {});
std::vector<double> block_lp_norms(const VectorField& v, double p,
                                   const CutoffProfile& profile = {});

/// l^r sum over j of (2^{js} block_j).
double weighted_sequence_norm(std::span<const double> blocks, int j_min, double s, double r);

double besov_norm(const Field& f, const NormSpec& spec, Warnings* warnings = nullptr);
double besov_norm(const VectorField& v, const NormSpec& spec, Warnings* warnings = nullptr);

/// Semi-norm restricted to blocks with 2^j <= R0 (low) or 2^j > R0 (high),
/// always with l^1 summation.
double besov_low(const Field& f, double s, double p, double R0);
double besov_high(const Field& f, double s, double p, double R0);
double besov_low(const VectorField& v, double s, double p, double R0);
double besov_high(const VectorField& v, double s, double p, double R0);

/// (f^l, f^H) with f^l = sum_{2^j <= R0} Delta_j f; f^l + f^H = f - mean(f).
std::pair<Field, Field> split_low_high(const Field& f, double R0);

double hybrid_norm(const Field& f, const HybridSpec& spec);
double hybrid_norm(const VectorField& v, const HybridSpec& spec);
double hybrid_norm(const Field& f, double s, double t, double r, double p, double R0);

double evaluate_norm(const Field& f, const NormKey& key);
double evaluate_norm(const VectorField& v, const NormKey& key);

/// Chemin-Lerner norm: time L^q (trapezoid on uniform samples over [0,T])
/// of each block before the weighted l^r sum over scales.
double chemin_lerner_norm(std::span<const Field> series, double q, const NormSpec& spec,
                          double T);
/// Ordinary mixed norm L^q_T(B^s_{p,r}): Besov norm first, then time.
double time_lebesgue_besov_norm(std::span<const Field> series, double q,
                                const NormSpec& spec, double T);

/// Trapezoid weights for n uniform samples over [0, T].
std::vector<double> trapezoid_weights(std::size_t n, double T);
/// Discrete L^q norm of samples with the given quadrature weights.
double time_lq(std::span<const double> values, std::span<const double> weights, double q);

}  // namespace cnslab
