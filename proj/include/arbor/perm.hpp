#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

/// A bijection of {1, ..., d}.
///
/// Points are stored 0-based; every textual form (parser, printer,
/// `fixed_points`) is 1-based. Images live inline so that portraits and
/// enumerated groups never touch the heap per permutation.
class Perm {
 public:
  using Point = std::uint8_t;
  static constexpr std::size_t kMaxDegree = 32;

  Perm() = default;

  static Perm identity(std::size_t degree);
  /// 0-based images; throws kInvalidPermutation unless a bijection.
  static Perm from_images(std::span<const std::size_t> images);
  /// 1-based images, as a user would write them.
  static Perm from_one_based(std::span<const std::size_t> images);
  /// Disjoint cycle notation, e.g. "(1 2 3 4)(5 6)", "(1,3)", "id", "()".
  static Perm parse(std::string_view text, std::size_t degree);

  std::size_t degree() const { return degree_; }
  Point operator()(std::size_t x) const { return images_[x]; }
  std::span<const Point> images() const { return {images_.data(), degree_}; }
  bool is_identity() const;

  /// Cycle notation with 1-based points; "id" for the identity.
  std::string to_string() const;

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.degree_ == b.degree_ && a.images_ == b.images_;
  }
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    for (std::size_t i = 0; i < a.degree_; ++i) {
      if (auto c = a.images_[i] <=> b.images_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const;

  friend Perm compose(const Perm& p, const Perm& q);
  friend Perm inverse(const Perm& p);

 private:
  std::array<Point, kMaxDegree> images_{};
  std::size_t degree_ = 1;  // default: identity of degree 1; unused tail stays zero
};

struct PermHash {
  std::size_t operator()(const Perm& p) const { return p.hash(); }
};

/// r(x) = p(q(x)): q is applied first.
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
/// g p g^-1.
Perm conjugate(const Perm& g, const Perm& p);
Perm power(const Perm& p, long long exponent);

/// 1-based fixed points, ascending.
std::vector<std::size_t> fixed_points(const Perm& p);
std::size_t fixed_point_count(const Perm& p);
/// Lengths of the disjoint cycles including 1-cycles, descending.
std::vector<std::size_t> cycle_type(const Perm& p);
std::size_t order_of(const Perm& p);

}  // namespace arbor
