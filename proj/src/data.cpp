#include "phasedr/data.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include "phasedr/errors.hpp"
#include "phasedr/rng.hpp"

namespace phasedr {

MeasuredData synthesize_data(const PropagationOp& op, const CVec& x0, double nsr,
                             std::uint64_t noise_seed) {
  if (!(nsr >= 0.0) || !std::isfinite(nsr)) {
    throw ConfigError("noise-to-signal ratio must be finite and >= 0");
  }
  MeasuredData data;
  data.nsr = nsr;
  data.noise_seed = noise_seed;
  const CVec y0 = op.forward(x0);
  data.b = y0.cwiseAbs();
  if (nsr > 0.0) {
    Rng rng(derive_seed(noise_seed, Stream::Noise));
    RVec eps = real_gaussian(data.b.size(), rng);
    eps *= nsr * y0.norm() / eps.norm();
    data.b = (data.b + eps).cwiseMax(0.0);
  }
  return data;
}

void write_data(std::ostream& os, const MeasuredData& data) {
  os << "B " << data.b.size() << '\n' << std::setprecision(17);
  for (Index j = 0; j < data.b.size(); ++j) os << data.b[j] << '\n';
}

MeasuredData read_data(std::istream& is) {
  std::string tag;
  Index n = -1;
  if (!(is >> tag >> n) || tag != "B" || n < 0) {
    throw ConfigError("data file: expected header 'B N'");
  }
  MeasuredData data;
  data.b.resize(n);
  for (Index j = 0; j < n; ++j) {
    if (!(is >> data.b[j]) || !(data.b[j] >= 0.0) || !std::isfinite(data.b[j])) {
      throw ConfigError("data file: expected " + std::to_string(n) +
                        " finite nonnegative magnitudes");
    }
  }
  return data;
}

}  // namespace phasedr
