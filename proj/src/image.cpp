#include "phasedr/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "phasedr/errors.hpp"
#include "phasedr/rng.hpp"

namespace phasedr {

namespace {

constexpr int kMaxval = 65535;

std::vector<std::size_t> coords_of(std::size_t flat, const GridShape& shape) {
  std::vector<std::size_t> c(shape.rank());
  for (std::size_t a = shape.rank(); a-- > 0;) {
    c[a] = flat % shape.extent(a);
    flat /= shape.extent(a);
  }
  return c;
}

bool in_interior(const std::vector<std::size_t>& c, const GridShape& shape, std::size_t margin) {
  for (std::size_t a = 0; a < c.size(); ++a) {
    if (c[a] < margin || c[a] + margin >= shape.extent(a)) return false;
  }
  return true;
}

// 53-bit uniform on [0, 1) straight from the engine output, so the image does
// not depend on the standard library's distribution implementation.
double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void zero_margin(CVec& x, const GridShape& shape, std::size_t margin) {
  for (std::size_t j = 0; j < shape.size(); ++j) {
    if (!in_interior(coords_of(j, shape), shape, margin)) x[static_cast<Index>(j)] = 0.0;
  }
}

std::pair<std::size_t, std::size_t> plane_dims(const GridShape& shape) {
  if (shape.rank() == 1) return {1, shape.extent(0)};
  if (shape.rank() == 2) return {shape.extent(0), shape.extent(1)};
  throw ConfigError("PGM images must be one- or two-dimensional");
}

void write_plane(const std::string& path, const RVec& v, std::size_t rows, std::size_t cols,
                 double lo, double hi) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << "P2\n" << cols << ' ' << rows << '\n' << kMaxval << '\n';
  const double span = hi - lo;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double t = span > 0.0 ? (v[static_cast<Index>(r * cols + c)] - lo) / span : 0.0;
      os << std::lround(std::clamp(t, 0.0, 1.0) * kMaxval) << (c + 1 == cols ? '\n' : ' ');
    }
  }
}

// Next whitespace-separated token, skipping '#' comments.
std::string pgm_token(std::istream& is) {
  std::string tok;
  while (is >> tok) {
    if (tok[0] != '#') return tok;
    std::string rest;
    std::getline(is, rest);
  }
  return {};
}

RVec read_plane(const std::string& path, std::size_t& rows, std::size_t& cols) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  if (pgm_token(is) != "P2") throw ConfigError(path + ": not an ASCII PGM (P2) file");
  try {
    cols = std::stoul(pgm_token(is));
    rows = std::stoul(pgm_token(is));
    const long maxval = std::stol(pgm_token(is));
    if (rows == 0 || cols == 0 || maxval <= 0) throw ConfigError(path + ": bad header");
    RVec v(static_cast<Index>(rows * cols));
    for (Index j = 0; j < v.size(); ++j) {
      const long p = std::stol(pgm_token(is));
      if (p < 0 || p > maxval) throw ConfigError(path + ": pixel out of range");
      v[j] = static_cast<double>(p) / static_cast<double>(maxval);
    }
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError(path + ": truncated or malformed PGM");
  }
}

}  // namespace

TestImage TestImage::parse_kind(const std::string& text) {
  TestImage t;
  if (text == "rpp") {
    t.kind = ImageKind::RandomPhase;
  } else if (text == "tcb") {
    t.kind = ImageKind::Texture;
  } else if (text.starts_with("file:") && text.size() > 5) {
    t.kind = ImageKind::File;
    t.path = text.substr(5);
  } else {
    throw ConfigError("unknown image '" + text + "' (expected rpp, tcb or file:<prefix>)");
  }
  return t;
}

std::string TestImage::kind_str() const {
  switch (kind) {
    case ImageKind::RandomPhase: return "rpp";
    case ImageKind::Texture: return "tcb";
    case ImageKind::File: return "file:" + path;
  }
  return "unknown";
}

std::size_t default_margin(const GridShape& shape) {
  std::size_t m = shape.extent(0);
  for (auto e : shape.dims()) m = std::min(m, e);
  return m / 8;
}

CVec gen_image(const TestImage& spec) {
  GridShape shape = spec.shape;
  CVec x;
  if (spec.kind == ImageKind::File) {
    x = read_image_pgm(spec.path, shape);
    if (!(shape == spec.shape)) {
      throw ConfigError("image file is " + shape.str() + ", expected " + spec.shape.str());
    }
  }
  for (auto e : shape.dims()) {
    if (e < 2 * spec.margin + 1) throw ConfigError("margin leaves no interior in " + shape.str());
  }
  const std::size_t m = spec.margin;
  const double pi = std::numbers::pi;

  if (spec.kind == ImageKind::RandomPhase) {
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0 && spec.beta >= 0.0 && spec.beta <= 1.0)) {
      throw ConfigError("image phase range needs 0 <= alpha, beta <= 1");
    }
    x = CVec::Zero(static_cast<Index>(shape.size()));
    Rng rng(derive_seed(spec.seed, Stream::Image));
    for (std::size_t j = 0; j < shape.size(); ++j) {
      const auto c = coords_of(j, shape);
      if (!in_interior(c, shape, m)) continue;
      double bump = 1.0;
      for (std::size_t a = 0; a < c.size(); ++a) {
        const double h = static_cast<double>(shape.extent(a) - 2 * m);
        bump *= std::sin(pi * (static_cast<double>(c[a] - m) + 0.5) / h);
      }
      const double phase = (-spec.alpha + (spec.alpha + spec.beta) * unit_uniform(rng)) * pi;
      x[static_cast<Index>(j)] = std::polar(0.2 + bump, phase);
    }
  } else if (spec.kind == ImageKind::Texture) {
    x = CVec::Zero(static_cast<Index>(shape.size()));
    double hmax = 1.0;
    for (auto e : shape.dims()) hmax = std::max(hmax, static_cast<double>(e - 2 * m));
    const double period = std::max(4.0, hmax / 3.0);
    for (std::size_t j = 0; j < shape.size(); ++j) {
      const auto c = coords_of(j, shape);
      if (!in_interior(c, shape, m)) continue;
      double r2 = 0.0;
      double diag = 0.0;
      for (std::size_t a = 0; a < c.size(); ++a) {
        const double h = static_cast<double>(shape.extent(a) - 2 * m);
        const double t = h > 1.0 ? 2.0 * static_cast<double>(c[a] - m) / (h - 1.0) - 1.0 : 0.0;
        r2 += t * t;
        diag += static_cast<double>(c[a] - m);
      }
      const double r = std::sqrt(r2 / static_cast<double>(c.size()));
      const double re = 1.0 - 0.8 * r;
      const double im = 0.5 + 0.4 * std::sin(2.0 * pi * diag / period);
      x[static_cast<Index>(j)] = Complex(re, im);
    }
  } else {
    zero_margin(x, shape, m);
  }
  return x;
}

int support_rank(const CVec& x, const GridShape& shape) {
  if (static_cast<std::size_t>(x.size()) != shape.size()) {
    throw ConfigError("support_rank: length does not match shape");
  }
  std::vector<std::vector<std::size_t>> pts;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    if (x[static_cast<Index>(j)] != Complex(0.0, 0.0)) pts.push_back(coords_of(j, shape));
  }
  if (pts.size() < 2) return 0;
  Eigen::MatrixXd diff(static_cast<Index>(pts.size() - 1), static_cast<Index>(shape.rank()));
  for (std::size_t p = 1; p < pts.size(); ++p) {
    for (std::size_t a = 0; a < shape.rank(); ++a) {
      diff(static_cast<Index>(p - 1), static_cast<Index>(a)) =
          static_cast<double>(pts[p][a]) - static_cast<double>(pts[0][a]);
    }
  }
  return static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(diff).rank());
}

void write_image_pgm(const std::string& prefix, const CVec& x, const GridShape& shape) {
  if (static_cast<std::size_t>(x.size()) != shape.size()) {
    throw ConfigError("write_image_pgm: length does not match shape");
  }
  const auto [rows, cols] = plane_dims(shape);
  const RVec re = x.real();
  const RVec im = x.imag();
  const double re_lo = re.minCoeff(), re_hi = re.maxCoeff();
  const double im_lo = im.minCoeff(), im_hi = im.maxCoeff();
  write_plane(prefix + ".re.pgm", re, rows, cols, re_lo, re_hi);
  write_plane(prefix + ".im.pgm", im, rows, cols, im_lo, im_hi);
  std::ofstream os(prefix + ".map.txt");
  if (!os) throw ConfigError("cannot write " + prefix + ".map.txt");
  os.precision(17);
  os << "shape " << shape.str() << '\n'
     << "re " << re_lo << ' ' << re_hi << '\n'
     << "im " << im_lo << ' ' << im_hi << '\n';
}

CVec read_image_pgm(const std::string& prefix, GridShape& shape) {
  std::ifstream map(prefix + ".map.txt");
  if (!map) throw ConfigError("cannot read " + prefix + ".map.txt");
  std::string tag, shape_text, re_tag, im_tag;
  double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
  if (!(map >> tag >> shape_text >> re_tag >> re_lo >> re_hi >> im_tag >> im_lo >> im_hi) ||
      tag != "shape" || re_tag != "re" || im_tag != "im") {
    throw ConfigError(prefix + ".map.txt: malformed value map");
  }
  shape = GridShape::parse(shape_text);
  const auto [rows, cols] = plane_dims(shape);
  std::size_t r1 = 0, c1 = 0, r2 = 0, c2 = 0;
  const RVec re = read_plane(prefix + ".re.pgm", r1, c1);
  const RVec im = read_plane(prefix + ".im.pgm", r2, c2);
  if (r1 != rows || c1 != cols || r2 != rows || c2 != cols) {
    throw ConfigError(prefix + ": PGM size disagrees with the value map");
  }
  CVec x(re.size());
  for (Index j = 0; j < x.size(); ++j) {
    x[j] = Complex(re_lo + re[j] * (re_hi - re_lo), im_lo + im[j] * (im_hi - im_lo));
  }
  return x;
}

}  // namespace phasedr
