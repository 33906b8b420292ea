#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "aswtower/tower.hpp"
#include "aswtower/witt.hpp"

namespace aswtower {

std::string to_string(LiftConvention c) { return c == LiftConvention::teichmuller ? "teichmuller" : "integer"; }

LiftConvention parse_lift(const std::string& s) {
  if (s == "teichmuller") return LiftConvention::teichmuller;
  if (s == "integer") return LiftConvention::integer;
  throw InputError("unknown lift convention '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw InputError("bad integer for " + what + ": '" + s + "'");
}

}  // namespace

TowerSpec parse_tower_spec(const std::string& text) {
  TowerSpec spec;
  std::set<std::string> seen;
  std::vector<std::pair<int, std::vector<std::string>>> coeff_lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_p = false;
  std::string modulus_text;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq != std::string::npos) {
      std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
      if (!seen.insert(key).second) throw InputError("duplicate key '" + key + "' on line " + std::to_string(lineno));
      if (key == "p") {
        long long v = parse_int(val, "p");
        if (v < 2 || v > 65536) throw InputError("p out of range");
        spec.field.p = static_cast<std::uint32_t>(v);
        have_p = true;
      } else if (key == "nu") {
        long long v = parse_int(val, "nu");
        if (v < 1 || v > 16) throw InputError("nu out of range");
        spec.field.nu = static_cast<std::uint32_t>(v);
      } else if (key == "modulus") {
        modulus_text = val;
      } else if (key == "levels") {
        long long v = parse_int(val, "levels");
        if (v < 1 || v > 16) throw InputError("levels out of range");
        spec.levels = static_cast<unsigned>(v);
      } else if (key == "lift") {
        spec.lift = parse_lift(val);
      } else if (key == "d") {
        long long v = parse_int(val, "d");
        if (v < 1) throw InputError("d must be positive");
        spec.declared_d = static_cast<unsigned>(v);
      } else {
        throw InputError("unknown key '" + key + "' on line " + std::to_string(lineno));
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.size() < 3 || tok[0] != "c")
      throw InputError("unrecognised line " + std::to_string(lineno) + ": '" + line + "'");
    coeff_lines.emplace_back(lineno, std::vector<std::string>(tok.begin() + 1, tok.end()));
  }
  if (!have_p) throw InputError("missing key 'p'");
  if (spec.field.nu > 1) {
    if (modulus_text.empty()) throw InputError("nu > 1 requires a modulus");
    std::stringstream ms(modulus_text);
    std::string c;
    while (std::getline(ms, c, ',')) {
      long long v = parse_int(trim(c), "modulus");
      if (v < 0 || v >= spec.field.p) throw InputError("modulus coefficient out of range");
      spec.field.modulus.push_back(static_cast<std::uint32_t>(v));
    }
  } else if (!modulus_text.empty()) {
    throw InputError("modulus given for nu = 1");
  }
  Field F(spec.field);
  for (auto& [ln, toks] : coeff_lines) {
    long long e = parse_int(toks[0], "exponent");
    if (e < 1) throw InputError("exponent must be positive on line " + std::to_string(ln));
    std::vector<Elem> coords;
    for (std::size_t i = 1; i < toks.size(); ++i) coords.push_back(F.parse(toks[i]));
    if (!spec.coeffs.emplace(static_cast<std::uint32_t>(e), coords).second)
      throw InputError("duplicate exponent " + toks[0]);
  }
  if (spec.coeffs.empty()) throw InputError("no coefficient lines");
  return spec;
}

TowerSpec load_tower_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tower_spec(ss.str());
}

std::string serialize_tower_spec(const TowerSpec& spec) {
  Field F(spec.field);
  std::ostringstream os;
  os << "p=" << spec.field.p << "\n";
  os << "nu=" << spec.field.nu << "\n";
  if (spec.field.nu > 1) {
    os << "modulus=";
    for (std::size_t i = 0; i < spec.field.modulus.size(); ++i) os << (i ? "," : "") << spec.field.modulus[i];
    os << "\n";
  }
  os << "levels=" << spec.levels << "\n";
  os << "lift=" << to_string(spec.lift) << "\n";
  if (spec.declared_d) os << "d=" << *spec.declared_d << "\n";
  for (const auto& [e, coords] : spec.coeffs) {
    os << "c " << e;
    for (auto c : coords) os << ' ' << F.to_string(c);
    os << "\n";
  }
  return os.str();
}

std::string spec_digest(const TowerSpec& spec) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : serialize_tower_spec(spec)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::map<std::uint32_t, std::vector<Elem>> resolve_coefficients(const TowerSpec& spec, const Field* F, unsigned n) {
  const std::uint32_t p = F->p();
  std::map<std::uint32_t, std::vector<Elem>> out;
  for (const auto& [i, coords] : spec.coeffs) {
    if (i % p == 0) throw InputError("exponent " + std::to_string(i) + " is divisible by p");
    std::vector<Elem> v(n, 0);
    if (coords.size() == 1 && spec.lift == LiftConvention::integer) {
      if (!F->in_prime_field(coords[0]))
        throw InputError("integer lift needs a prime-field coefficient at exponent " + std::to_string(i));
      v = witt_of_integer(F, coords[0], n);
    } else {
      for (std::size_t j = 0; j < coords.size() && j < n; ++j) v[j] = coords[j];
    }
    out[i] = v;
  }
  unsigned d = 0;
  for (const auto& [i, v] : out)
    if (v[0] != 0) d = std::max(d, i);
  if (d == 0) throw InputError("coordinate-0 polynomial is constant");
  for (const auto& [i, v] : out) {
    std::uint64_t bound = d;
    for (unsigned j = 0; j < n; ++j, bound *= p)
      if (v[j] != 0 && i > bound)
        throw InputError("break condition violated at exponent " + std::to_string(i) + " (coordinate " +
                         std::to_string(j) + ")");
  }
  if (spec.declared_d && *spec.declared_d != d)
    throw InputError("declared d = " + std::to_string(*spec.declared_d) + " but the spec has degree " +
                     std::to_string(d));
  return out;
}

unsigned spec_degree(const TowerSpec& spec) {
  Field F(spec.field);
  auto c = resolve_coefficients(spec, &F, 1);
  unsigned d = 0;
  for (const auto& [i, v] : c)
    if (v[0] != 0) d = std::max(d, i);
  return d;
}

std::vector<Poly> build_rhs(const TowerSpec& spec, const Field* F, unsigned n) {
  auto coeffs = resolve_coefficients(spec, F, n);
  const std::uint32_t p = F->p();
  PolyOps ops{F};
  std::vector<Poly> acc(n, Poly(F));
  for (const auto& [i, v] : coeffs) {
    // c * [x^i] = (c_0 x^i, c_1 x^{ip}, c_2 x^{ip^2}, ...)
    std::vector<Poly> term(n, Poly(F));
    std::size_t e = i;
    for (unsigned j = 0; j < n; ++j, e *= p) term[j] = Poly::monomial(F, v[j], e);
    acc = witt_add(p, acc, term, ops);
  }
  return acc;
}

}  // namespace aswtower
