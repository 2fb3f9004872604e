#pragma once

// The named counterexample objects, built from the embedded matrices.

#include "fuglede/continuum.hpp"
#include "fuglede/hadamard.hpp"
#include "fuglede/lattice.hpp"

namespace fuglede {

/// {e_1..e_12} in Z_2^12 with the spectrum read off the 12 x 12 matrix.
inline SpectralPair z2_12_pair(const ButsonMatrix& h = hadamard_12()) { return spectrum_from_butson(h); }

inline SpectralPair z2_11_pair(const ButsonMatrix& h = hadamard_12()) { return descend(z2_12_pair(h)); }

/// {e_1..e_6} in Z_3^6 with the spectrum read off the 6 x 6 matrix.
inline SpectralPair z3_6_pair(const ButsonMatrix& h = hadamard_6()) { return spectrum_from_butson(h); }

/// Six points in Z_3^5: the Z_3^6 pair pushed through descend().
inline SpectralPair z3_5_pair(const ButsonMatrix& h = hadamard_6()) { return descend(z3_6_pair(h)); }

/// The Z_3^n pair for n >= 5, zero-padded.
inline SpectralPair z3_n_pair(std::size_t n, const ButsonMatrix& h = hadamard_6()) {
  return pad_dimension(z3_5_pair(h), n);
}

struct LatticePair {
  LatticeConfig config;
  ElementSet base;
  ElementSet base_spectrum;
  LatticeSet omega1;
  FrequencySet lambda1;
};

inline LatticePair lattice_pair(const LatticeConfig& cfg, const ButsonMatrix& h = hadamard_6()) {
  const SpectralPair finite = z3_n_pair(cfg.dimension, h);
  return {cfg, finite.set, finite.spectrum, build_omega1(finite.set, cfg), build_lambda1(finite.spectrum, cfg)};
}

}  // namespace fuglede
