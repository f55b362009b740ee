#include "reductlab/permutation.hpp"

#include <charconv>
#include <deque>
#include <unordered_set>

namespace reductlab {

PointPermutation::PointPermutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw MalformedInput("image list is not a permutation");
    seen[p] = true;
  }
}

PointPermutation PointPermutation::identity(std::size_t n) {
  PointPermutation p;
  p.images_.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.images_[i] = static_cast<Point>(i);
  return p;
}

PointPermutation PointPermutation::then(const PointPermutation& next) const {
  if (next.size() != size()) throw DimensionMismatch("composing permutations of different degree");
  PointPermutation r;
  r.images_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) r.images_[i] = next.images_[images_[i]];
  return r;
}

PointPermutation PointPermutation::inverse() const {
  PointPermutation r;
  r.images_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

bool PointPermutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string PointPermutation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(images_[i]);
  }
  return s;
}

PointPermutation PointPermutation::parse(std::string_view line) {
  std::vector<Point> images;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    Point v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
    if (ec != std::errc{}) throw MalformedInput("bad permutation entry in: " + std::string(line));
    pos = static_cast<std::size_t>(ptr - line.data());
    if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') {
      throw MalformedInput("bad permutation entry in: " + std::string(line));
    }
    images.push_back(v);
  }
  return PointPermutation(std::move(images));
}

namespace {
struct ImagesHash {
  std::size_t operator()(const std::vector<Point>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point p : v) {
      h ^= p;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
}  // namespace

std::uint64_t closure_order(const std::vector<PointPermutation>& generators, std::uint64_t max_elements) {
  if (generators.empty()) return 1;
  const std::size_t n = generators.front().size();
  std::unordered_set<std::vector<Point>, ImagesHash> seen;
  std::deque<PointPermutation> frontier;
  auto id = PointPermutation::identity(n);
  seen.insert(id.images());
  frontier.push_back(std::move(id));
  while (!frontier.empty()) {
    PointPermutation g = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : generators) {
      PointPermutation h = g.then(s);
      if (seen.insert(h.images()).second) {
        if (seen.size() > max_elements) {
          throw ResourceError("group closure exceeds budget of " + std::to_string(max_elements) + " elements");
        }
        frontier.push_back(std::move(h));
      }
    }
  }
  return seen.size();
}

}  // namespace reductlab
