#include "arbor/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "arbor/error.hpp"

namespace arbor {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Entry {
  std::string key;
  std::string value;
};

std::vector<Entry> key_values(std::string_view text) {
  std::vector<Entry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(number) + ": expected 'key: value'");
    }
    out.push_back({trim(t.substr(0, colon)), trim(t.substr(colon + 1))});
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t parse_count(const std::string& v, const std::string& key) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::kParse, key + ": expected a positive integer, got '" + v + "'");
  }
  return std::stoul(v);
}

FiniteGroup group_from(std::optional<std::size_t> degree, const std::optional<std::string>& gens,
                       std::size_t cap) {
  if (!degree) throw Error(ErrorCode::kParse, "missing 'degree:'");
  std::vector<Perm> perms;
  if (gens) {
    for (const std::string& g : split_top_level(*gens)) perms.push_back(Perm::parse(g, *degree));
  }
  return FiniteGroup::generate(*degree, std::move(perms), cap);
}

}  // namespace

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (depth != 0) throw Error(ErrorCode::kParse, "unbalanced parentheses in '" + std::string(text) + "'");
  std::string last = trim(current);
  if (!last.empty() || !out.empty()) out.push_back(last);
  for (const std::string& s : out) {
    if (s.empty()) throw Error(ErrorCode::kParse, "empty item in '" + std::string(text) + "'");
  }
  return out;
}

FiniteGroup parse_group_text(std::string_view text, std::size_t cap) {
  std::optional<std::size_t> degree;
  std::optional<std::string> gens;
  for (const Entry& e : key_values(text)) {
    if (e.key == "degree") {
      degree = parse_count(e.value, e.key);
    } else if (e.key == "generators") {
      gens = e.value;
    } else {
      throw Error(ErrorCode::kParse, "unknown key '" + e.key + "' in group text");
    }
  }
  return group_from(degree, gens, cap);
}

FiniteGroup read_group_file(const std::filesystem::path& path, std::size_t cap) {
  return parse_group_text(slurp(path), cap);
}

PatternSpec parse_pattern_text(std::string_view text, const std::filesystem::path& base_dir,
                               std::size_t cap) {
  std::optional<std::size_t> degree;
  std::optional<std::string> gens;
  std::optional<std::string> group_path;
  std::optional<std::string> sigma_text;
  PatternSpec spec;
  for (const Entry& e : key_values(text)) {
    if (e.key == "degree") {
      degree = parse_count(e.value, e.key);
    } else if (e.key == "generators") {
      gens = e.value;
    } else if (e.key == "group") {
      group_path = e.value;
    } else if (e.key == "family") {
      spec.family = e.value;
    } else if (e.key == "p") {
      spec.p = static_cast<int>(parse_count(e.value, e.key));
    } else if (e.key == "pair") {
      spec.pair_index = parse_count(e.value, e.key);
    } else if (e.key == "sigma") {
      sigma_text = e.value;
    } else {
      throw Error(ErrorCode::kParse, "unknown key '" + e.key + "' in pattern text");
    }
  }
  if (group_path && degree) throw Error(ErrorCode::kParse, "give either group: or degree:, not both");
  spec.group = group_path ? read_group_file(base_dir / *group_path, cap) : group_from(degree, gens, cap);
  if (spec.family != "wreath" && spec.family != "theorem12") {
    throw Error(ErrorCode::kParse, "family must be wreath or theorem12, got '" + spec.family + "'");
  }
  if (spec.family == "theorem12" && spec.p == 0) throw Error(ErrorCode::kParse, "theorem12 needs p:");
  if (sigma_text) {
    const auto arrow = sigma_text->find("->");
    if (arrow == std::string::npos) throw Error(ErrorCode::kParse, "sigma: expected 'a -> b'");
    const std::size_t d = spec.group.degree();
    spec.sigma = std::make_pair(Perm::parse(trim(sigma_text->substr(0, arrow)), d),
                                Perm::parse(trim(sigma_text->substr(arrow + 2)), d));
  }
  return spec;
}

PatternSpec read_pattern_file(const std::filesystem::path& path, std::size_t cap) {
  return parse_pattern_text(slurp(path), path.parent_path(), cap);
}

PatternGroup build_pattern(const PatternSpec& spec, const std::optional<SubgroupPair>& pair) {
  if (spec.family == "wreath") return wreath_pattern(spec.group);
  SubgroupPair chosen;
  if (pair) {
    chosen = *pair;
  } else {
    const std::vector<SubgroupPair> pairs = find_index_p_normal_pairs(spec.group, spec.p);
    if (pairs.empty()) {
      throw Error(ErrorCode::kInvalidPair,
                  "no transitive/intransitive pair of index " + std::to_string(spec.p));
    }
    if (spec.pair_index < 1 || spec.pair_index > pairs.size()) {
      throw Error(ErrorCode::kInvalidPair, "pair index " + std::to_string(spec.pair_index) +
                                               " outside 1.." + std::to_string(pairs.size()));
    }
    chosen = pairs[spec.pair_index - 1];
  }
  if (spec.sigma) chosen = with_sigma(chosen, spec.sigma->first, spec.sigma->second);
  return build_theorem12_pattern(spec.group, chosen);
}

}  // namespace arbor
