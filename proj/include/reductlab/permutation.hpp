#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reductlab/gf_linalg.hpp"

namespace reductlab {

/// An explicit permutation of {0, ..., N-1}; images()[i] is the image of i.
class PointPermutation {
 public:
  PointPermutation() = default;
  /// Throws MalformedInput unless `images` is a bijection.
  explicit PointPermutation(std::vector<Point> images);
  static PointPermutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  Point operator()(Point p) const { return images_[p]; }
  const std::vector<Point>& images() const { return images_; }

  /// Apply *this first, then `next`.
  PointPermutation then(const PointPermutation& next) const;
  PointPermutation inverse() const;
  bool is_identity() const;

  /// One line of space-separated image indices.
  std::string to_string() const;
  static PointPermutation parse(std::string_view line);

  friend bool operator==(const PointPermutation&, const PointPermutation&) = default;
  friend auto operator<=>(const PointPermutation&, const PointPermutation&) = default;

 private:
  std::vector<Point> images_;
};

/// Order of the group generated by `generators`, by breadth-first closure
/// over explicit elements. Throws ResourceError past `max_elements`.
std::uint64_t closure_order(const std::vector<PointPermutation>& generators, std::uint64_t max_elements);

}  // namespace reductlab
