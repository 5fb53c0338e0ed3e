#include "phasedr/grid.hpp"

#include <charconv>
#include <numeric>

#include "phasedr/errors.hpp"

namespace phasedr {

GridShape::GridShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ConfigError("GridShape: at least one axis is required");
  for (auto e : dims_) {
    if (e == 0) throw ConfigError("GridShape: extents must be positive");
  }
}

GridShape GridShape::parse(std::string_view text) {
  std::vector<std::size_t> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find_first_of("xX", start);
    if (stop == std::string_view::npos) stop = text.size();
    auto token = text.substr(start, stop - start);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ConfigError("cannot parse grid shape '" + std::string(text) + "'");
    }
    dims.push_back(value);
    start = stop + 1;
  }
  return GridShape(std::move(dims));
}

std::size_t GridShape::size() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

GridShape GridShape::oversampled() const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) out[i] = 2 * dims_[i] - 1;
  return GridShape(std::move(out));
}

std::string GridShape::str() const {
  std::string s;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(dims_[i]);
  }
  return s;
}

std::vector<std::size_t> embedding_positions(const GridShape& inner, const GridShape& outer) {
  if (inner.rank() != outer.rank()) {
    throw ConfigError("embedding_positions: rank mismatch");
  }
  for (std::size_t a = 0; a < inner.rank(); ++a) {
    if (inner.extent(a) > outer.extent(a)) {
      throw ConfigError("embedding_positions: inner grid " + inner.str() +
                        " does not fit in " + outer.str());
    }
  }
  const std::size_t d = inner.rank();
  std::vector<std::size_t> pos(inner.size());
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < pos.size(); ++flat) {
    std::size_t p = 0;
    for (std::size_t a = 0; a < d; ++a) p = p * outer.extent(a) + idx[a];
    pos[flat] = p;
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < inner.extent(a)) break;
      idx[a] = 0;
    }
  }
  return pos;
}

}  // namespace phasedr
