#pragma once

#include <cstdint>
#include <string>

#include "phasedr/grid.hpp"
#include "phasedr/linalg.hpp"

namespace phasedr {

enum class ImageKind {
  /// Smooth bump magnitudes with i.i.d. phases uniform in [-alpha pi, beta pi].
  RandomPhase,
  /// Deterministic complex texture: radial gradient (real) and diagonal stripes (imag).
  Texture,
  /// Read from a PGM pair (see write_image_pgm).
  File,
};

struct TestImage {
  ImageKind kind = ImageKind::RandomPhase;
  GridShape shape{{16, 16}};
  std::size_t margin = 0;
  double alpha = 1.0;  // RandomPhase only
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::string path;  // File only: prefix of the PGM pair

  /// "rpp", "tcb" or "file:<prefix>".
  static TestImage parse_kind(const std::string& text);
  std::string kind_str() const;
};

/// Width of the zero frame used when none is requested explicitly: 1/8 of the
/// smallest extent.
std::size_t default_margin(const GridShape& shape);

/// Object on `spec.shape`, row-major. Margin cells are exactly zero. Bit-identical
/// for identical specs. Throws ConfigError when the margin leaves no interior.
CVec gen_image(const TestImage& spec);

/// Dimension of the affine hull of the support {m : x(m) != 0}.
int support_rank(const CVec& x, const GridShape& shape);

/// Writes <prefix>.re.pgm and <prefix>.im.pgm (ASCII P2, maxval 65535) and
/// <prefix>.map.txt holding the linear value ranges. Rank 1 or 2 shapes only.
void write_image_pgm(const std::string& prefix, const CVec& x, const GridShape& shape);
/// Inverse of write_image_pgm up to 16-bit quantization. Sets `shape`.
CVec read_image_pgm(const std::string& prefix, GridShape& shape);

}  // namespace phasedr
