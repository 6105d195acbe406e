// CSV report generators behind the CLI `report` subcommand. Each one
// regenerates the data behind one figure-style study at a configurable
// scale.

#pragma once

#include <iosfwd>

#include "qmix/genesis.hpp"

namespace qmix {

// CEL-vs-phi curves for the noisy GHZ and W families, p = cos^2(phi/2).
// Columns: family,n,phi,p,cel,threshold,in_true_separable_region
void report_cel_curves(std::ostream& out, const std::vector<int>& ns,
                       int phi_steps);

// Purity samples per (ansatz, width, depth) cell, one traced ancilla.
// Columns: ansatz,width,depth,sample,purity
void report_purity_survey(std::ostream& out, std::uint64_t seed, int samples);

// CEL distribution of a trained generator under input perturbations.
// Columns: epsilon,index,cel
void report_epsilon_spread(std::ostream& out, const GenConfig& config,
                           const AnsatzSpec& spec,
                           const std::vector<double>& epsilons, int per_eps);

}  // namespace qmix
