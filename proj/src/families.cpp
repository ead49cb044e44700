#include "arbor/families.hpp"

#include <charconv>

#include "arbor/error.hpp"

namespace arbor {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    out.emplace_back(text.substr(start, at == std::string_view::npos ? at : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

int parse_int(const std::string& s, std::string_view whole) {
  int value = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "bad integer '" + s + "' in family '" + std::string(whole) + "'");
  }
  return value;
}

void require(bool ok, const FamilySpec& spec, const std::string& why) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, spec.to_string() + ": " + why);
}

Perm cycle_on(std::size_t degree, std::size_t first, std::size_t last) {
  std::vector<std::size_t> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = i;
  for (std::size_t i = first; i < last; ++i) img[i] = i + 1;
  img[last] = first;
  return Perm::from_images(img);
}

FiniteGroup symmetric(std::size_t n, std::size_t cap) {
  if (n == 1) return FiniteGroup::trivial(1);
  return FiniteGroup::generate(n, {cycle_on(n, 0, n - 1), cycle_on(n, 0, 1)}, cap);
}

FiniteGroup alternating(std::size_t n, std::size_t cap) {
  if (n < 3) return FiniteGroup::trivial(n);
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k) {
    std::vector<std::size_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = i;
    img[0] = 1;
    img[1] = k;
    img[k] = 0;
    gens.push_back(Perm::from_images(img));
  }
  return FiniteGroup::generate(n, gens, cap);
}

}  // namespace

std::string FamilySpec::to_string() const {
  std::string out = name;
  if (name == "klein") return out + ":" + variant;
  for (int p : params) out += ":" + std::to_string(p);
  if (!variant.empty()) out += ":" + variant;
  return out;
}

FamilySpec parse_family(std::string_view text) {
  const std::vector<std::string> parts = split(text, ':');
  FamilySpec spec;
  spec.name = parts[0];
  if (spec.name == "klein") {
    if (parts.size() != 2 || parts[1].empty()) {
      throw Error(ErrorCode::kParse, "expected klein:<A4|S4|A5|C<n>|D<n>>, got '" +
                                         std::string(text) + "'");
    }
    spec.variant = parts[1];
    return spec;
  }
  if (spec.name != "cyclic" && spec.name != "dihedral" && spec.name != "symmetric" &&
      spec.name != "alternating") {
    throw Error(ErrorCode::kInvalidParams, "unknown family '" + spec.name + "'");
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw Error(ErrorCode::kParse, "expected name:degree[:variant], got '" + std::string(text) + "'");
  }
  spec.params.push_back(parse_int(parts[1], text));
  if (parts.size() == 3) spec.variant = parts[2];
  return spec;
}

Perm dihedral_rotation(std::size_t m) { return cycle_on(m, 0, m - 1); }

Perm dihedral_reflection(std::size_t m) {
  std::vector<std::size_t> img(m);
  for (std::size_t i = 0; i < m; ++i) img[i] = (m - i) % m;  // 0-based: i -> -i
  return Perm::from_images(img);
}

FamilyGroup build_family(const FamilySpec& spec, std::size_t cap) {
  if (spec.name == "klein") {
    const std::string& v = spec.variant;
    FamilySpec inner;
    if (v == "A4") inner = {"alternating", {4}, ""};
    else if (v == "S4") inner = {"symmetric", {4}, ""};
    else if (v == "A5") inner = {"alternating", {5}, ""};
    else if (v.size() > 1 && (v[0] == 'C' || v[0] == 'D')) {
      inner = {v[0] == 'C' ? "cyclic" : "dihedral", {parse_int(v.substr(1), v)}, ""};
    } else {
      throw Error(ErrorCode::kInvalidParams, "unknown Klein entry '" + v + "'");
    }
    FamilyGroup out = build_family(inner, cap);
    out.label = spec.to_string();
    out.pair.reset();
    return out;
  }
  require(spec.params.size() == 1, spec, "expected one parameter");
  const int n = spec.params[0];
  require(n >= 1 && static_cast<std::size_t>(n) <= Perm::kMaxDegree, spec,
          "degree must lie in 1.." + std::to_string(Perm::kMaxDegree));
  const auto d = static_cast<std::size_t>(n);
  FamilyGroup out;
  out.label = spec.to_string();
  if (spec.name == "cyclic") {
    require(spec.variant.empty(), spec, "no variants");
    out.group = FiniteGroup::generate(d, {dihedral_rotation(d)}, cap);
  } else if (spec.name == "symmetric") {
    require(spec.variant.empty(), spec, "no variants");
    out.group = symmetric(d, cap);
  } else if (spec.name == "alternating") {
    require(spec.variant.empty(), spec, "no variants");
    out.group = alternating(d, cap);
  } else if (spec.name == "dihedral") {
    require(n >= 3, spec, "dihedral degree must be at least 3");
    require(spec.variant.empty() || spec.variant == "rotation" || spec.variant == "mixed", spec,
            "variant must be rotation or mixed");
    const Perm r = dihedral_rotation(d);
    const Perm s = dihedral_reflection(d);
    out.group = FiniteGroup::generate(d, {r, s}, cap);
    if (d % 2 == 0) {
      const Perm r2 = compose(r, r);
      FiniteGroup n1 = spec.variant == "mixed" ? FiniteGroup::generate(d, {r2, compose(r, s)}, cap)
                                               : FiniteGroup::generate(d, {r}, cap);
      FiniteGroup n2 = FiniteGroup::generate(d, {r2, s}, cap);
      out.pair = make_subgroup_pair(out.group, std::move(n1), std::move(n2), 2);
    } else {
      require(spec.variant.empty(), spec, "odd dihedral groups have no subgroup pair");
    }
  } else {
    throw Error(ErrorCode::kInvalidParams, "unknown family '" + spec.name + "'");
  }
  return out;
}

std::vector<FamilySpec> klein_catalog(int max_degree) {
  std::vector<FamilySpec> out;
  for (int n = 2; n <= max_degree; ++n) out.push_back({"klein", {}, "C" + std::to_string(n)});
  for (int n = 3; n <= max_degree; ++n) out.push_back({"klein", {}, "D" + std::to_string(n)});
  out.push_back({"klein", {}, "A4"});
  out.push_back({"klein", {}, "S4"});
  out.push_back({"klein", {}, "A5"});
  return out;
}

std::vector<BuiltinPattern> builtin_patterns() {
  std::vector<BuiltinPattern> out;
  for (const char* name : {"cyclic:2", "cyclic:3", "cyclic:4", "dihedral:3", "dihedral:4",
                           "symmetric:3", "alternating:4", "symmetric:4", "cyclic:5",
                           "dihedral:5"}) {
    out.push_back({std::string("wreath ") + name,
                   wreath_pattern(build_family(parse_family(name)).group)});
  }
  for (const char* name : {"dihedral:4", "dihedral:4:mixed", "dihedral:6", "dihedral:6:mixed"}) {
    const FamilyGroup fam = build_family(parse_family(name));
    out.push_back({std::string("theorem12 ") + name, build_theorem12_pattern(fam.group, *fam.pair)});
  }
  out.push_back({"depth2 dihedral:4[dihedral:4]",
                 PatternGroup::full_wreath_depth2(build_family(parse_family("dihedral:4")).group)});
  return out;
}

}  // namespace arbor
