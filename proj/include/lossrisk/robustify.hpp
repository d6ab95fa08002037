#pragma once

#include <vector>

#include "lossrisk/measures.hpp"
#include "lossrisk/quantile.hpp"

namespace lossrisk {

// Penalty family after delta-truncation: every measure is zero on (0, delta)
// and carries the mass that sat on (0, delta] as an atom at delta. Atoms of
// zero mass are omitted.
struct TruncatedFamily {
  double delta;
  std::vector<PenaltyEntry> entries;

  PenaltyFamily to_penalty_family() const;
};

struct SpectralEntry {
  SpectralDensity phi;
  double penalty;
};

// Density phi on (delta, 1), atom of mass int_0^delta phi at delta, nothing
// below. Throws DomainError unless 0 < delta < 1.
MeasureOn01 pi_map(const SpectralDensity& phi, double delta);

// The same push-forward for a general measure: restriction to (delta, 1) plus
// m((0, delta]) as an atom at delta.
MeasureOn01 pi_map(const MeasureOn01& m, double delta);

// Entrywise pi_map. Entries with the same image are merged, keeping the
// smallest penalty.
TruncatedFamily truncate_family(const PenaltyFamily& family, double delta);
TruncatedFamily truncate_family(const std::vector<SpectralEntry>& family, double delta);

// phi 1_(delta,1) / int_delta^1 phi. The result is a probability weight but
// is not nonincreasing, so in_psi is always false.
struct AltTruncatedWeight {
  MeasureOn01 weight;
  bool in_psi = false;
};

// Throws DegenerateInput when int_delta^1 phi = 0.
AltTruncatedWeight alt_truncate(const SpectralDensity& phi, double delta);

struct RepresentationCheck {
  double definitional;    // spectral measure evaluated on G(. v delta)
  double representation;  // general Fenchel evaluation on the truncated family
  double difference;
  bool equal;
};

RepresentationCheck truncated_equals_representation(const QuantileFn& g,
                                                    const SpectralDensity& phi,
                                                    double delta, double tol);

}  // namespace lossrisk
