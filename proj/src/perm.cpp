#include "arbor/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "arbor/error.hpp"

namespace arbor {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegreeMismatch: return "DegreeMismatch";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kNotASubgroup: return "NotASubgroup";
    case ErrorCode::kNotTransitive: return "NotTransitive";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kInvalidPair: return "InvalidPair";
    case ErrorCode::kWordTooLong: return "WordTooLong";
    case ErrorCode::kLetterOutOfRange: return "LetterOutOfRange";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kWrongDepth: return "WrongDepth";
    case ErrorCode::kUnverifiedPattern: return "UnverifiedPattern";
    case ErrorCode::kNonUniformFibers: return "NonUniformFibers";
    case ErrorCode::kZeroProbabilityHistory: return "ZeroProbabilityHistory";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

namespace {

void check_degree(std::size_t degree) {
  if (degree == 0 || degree > Perm::kMaxDegree) {
    throw Error(ErrorCode::kInvalidPermutation,
                "degree must be in [1, " + std::to_string(Perm::kMaxDegree) +
                    "], got " + std::to_string(degree));
  }
}

}  // namespace

Perm Perm::identity(std::size_t degree) {
  check_degree(degree);
  Perm p;
  p.degree_ = degree;
  for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<Point>(i);
  return p;
}

Perm Perm::from_images(std::span<const std::size_t> images) {
  check_degree(images.size());
  Perm p;
  p.degree_ = images.size();
  std::array<bool, kMaxDegree> seen{};
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] >= images.size() || seen[images[i]]) {
      throw Error(ErrorCode::kInvalidPermutation, "images are not a bijection");
    }
    seen[images[i]] = true;
    p.images_[i] = static_cast<Point>(images[i]);
  }
  return p;
}

Perm Perm::from_one_based(std::span<const std::size_t> images) {
  std::vector<std::size_t> zero(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] == 0) throw Error(ErrorCode::kInvalidPermutation, "point 0 in 1-based images");
    zero[i] = images[i] - 1;
  }
  return from_images(zero);
}

Perm Perm::parse(std::string_view text, std::size_t degree) {
  check_degree(degree);
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty() || compact == "id" || compact == "e" || compact == "()") {
    return identity(degree);
  }

  std::vector<std::size_t> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(degree, false);

  // Re-tokenize on the original text so "(1 2)" and "(1,2)" both work.
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParse, "cannot parse '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') fail("expected '('");
    ++i;
    std::vector<std::size_t> cycle;
    bool closed = false;
    while (i < text.size()) {
      c = text[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++i;
      } else if (c == ')') {
        ++i;
        closed = true;
        break;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          value = value * 10 + static_cast<std::size_t>(text[i] - '0');
          if (value > 1000000) fail("point too large");
          ++i;
        }
        if (value < 1 || value > degree) {
          fail("point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
        }
        cycle.push_back(value - 1);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    if (!closed) fail("unterminated cycle");
    for (std::size_t x : cycle) {
      if (used[x]) fail("cycles are not disjoint (point " + std::to_string(x + 1) + ")");
      used[x] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
  }
  return from_images(images);
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < degree_; ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string Perm::to_string() const {
  std::string out;
  std::array<bool, kMaxDegree> seen{};
  for (std::size_t start = 0; start < degree_; ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = images_[x];
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

std::size_t Perm::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ degree_;
  for (std::size_t i = 0; i < degree_; ++i) {
    h ^= images_[i];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) {
    throw Error(ErrorCode::kDegreeMismatch, "compose: degrees " + std::to_string(p.degree()) +
                                                " and " + std::to_string(q.degree()));
  }
  Perm r;
  r.degree_ = p.degree_;
  for (std::size_t x = 0; x < p.degree_; ++x) r.images_[x] = p.images_[q.images_[x]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r;
  r.degree_ = p.degree_;
  for (std::size_t x = 0; x < p.degree_; ++x) r.images_[p.images_[x]] = static_cast<Perm::Point>(x);
  return r;
}

Perm conjugate(const Perm& g, const Perm& p) { return compose(compose(g, p), inverse(g)); }

Perm power(const Perm& p, long long exponent) {
  Perm base = exponent < 0 ? inverse(p) : p;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                      : static_cast<unsigned long long>(exponent);
  Perm result = Perm::identity(p.degree());
  while (e > 0) {
    if (e & 1ULL) result = compose(result, base);
    base = compose(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<std::size_t> fixed_points(const Perm& p) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < p.degree(); ++x) {
    if (p(x) == x) out.push_back(x + 1);
  }
  return out;
}

std::size_t fixed_point_count(const Perm& p) {
  std::size_t n = 0;
  for (std::size_t x = 0; x < p.degree(); ++x) n += (p(x) == x);
  return n;
}

std::vector<std::size_t> cycle_type(const Perm& p) {
  std::vector<std::size_t> lengths;
  std::array<bool, Perm::kMaxDegree> seen{};
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t x = start; !seen[x]; x = p(x)) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::size_t order_of(const Perm& p) {
  std::size_t result = 1;
  for (std::size_t len : cycle_type(p)) result = std::lcm(result, len);
  return result;
}

}  // namespace arbor
