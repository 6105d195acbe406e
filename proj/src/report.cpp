#include "qmix/report.hpp"

#include "qmix/cel.hpp"

#include <cmath>
#include <ostream>

namespace qmix {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void report_cel_curves(std::ostream& out, const std::vector<int>& ns,
                       int phi_steps) {
  out << "family,n,phi,p,cel,threshold,in_true_separable_region\n";
  out.precision(17);
  for (int n : ns) {
    for (int family = 0; family < 2; ++family) {
      const bool ghz = (family == 0);
      const double threshold = ghz ? ghz_sep_threshold(n) : w_sep_threshold(n);
      for (int i = 0; i <= phi_steps; ++i) {
        const double phi = kTwoPi * double(i) / double(phi_steps);
        const double c = std::cos(phi / 2.0);
        const double p = c * c;
        const double cel = ghz ? cel_ghz_noisy(n, p) : cel_w_noisy(n, p);
        out << (ghz ? "ghz" : "w") << ',' << n << ',' << phi << ',' << p << ','
            << cel << ',' << threshold << ',' << (p <= threshold ? 1 : 0)
            << '\n';
      }
    }
  }
}

void report_purity_survey(std::ostream& out, std::uint64_t seed, int samples) {
  out << "ansatz,width,depth,sample,purity\n";
  out.precision(17);
  const auto rows = purity_survey(
      {AnsatzKind::HWE, AnsatzKind::SEA, AnsatzKind::SD}, {2, 3, 4, 5},
      {1, 2, 3, 4}, samples, seed);
  for (const auto& r : rows) {
    out << ansatz_name(r.kind) << ',' << r.width << ',' << r.depth << ','
        << r.sample << ',' << r.purity << '\n';
  }
}

void report_epsilon_spread(std::ostream& out, const GenConfig& config,
                           const AnsatzSpec& spec,
                           const std::vector<double>& epsilons, int per_eps) {
  out << "epsilon,index,cel\n";
  out.precision(17);
  for (const auto& point : epsilon_spread(config, spec, epsilons, per_eps)) {
    out << point.epsilon << ',' << point.index << ',' << point.cel << '\n';
  }
}

}  // namespace qmix
