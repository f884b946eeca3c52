#include "spec.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace canonica::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

int to_int(const std::string& tok, const std::string& what) {
  const std::string t = trim(tok);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t, &used);
  } catch (const std::exception&) {
    throw SchemaError("expected an integer for " + what + ", got '" + t + "'");
  }
  if (used != t.size()) throw SchemaError("expected an integer for " + what + ", got '" + t + "'");
  return v;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

/// Splits on commas that are not nested in parentheses.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw SchemaError("unbalanced parentheses in '" + s + "'");
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw SchemaError("unbalanced parentheses in '" + s + "'");
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  for (const auto& x : out)
    if (x.empty()) throw SchemaError("empty entry in list '" + s + "'");
  return out;
}

/// Contents of the bracket groups "[...]" in order; anything else is an error.
std::vector<std::string> bracket_groups(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '[') throw SchemaError("expected '[' in '" + s + "'");
    const std::size_t close = s.find(']', i);
    if (close == std::string::npos) throw SchemaError("missing ']' in '" + s + "'");
    out.push_back(s.substr(i + 1, close - i - 1));
    i = close + 1;
  }
  return out;
}

ChainStep parse_step(const std::string& body) {
  const std::string b = trim(body);
  ChainStep st;
  const auto w = words(b);
  if (w.empty()) throw SchemaError("empty chain step");
  if (w[0] == "triv") {
    if (w.size() != 2) throw SchemaError("expected 'triv Q', got '" + b + "'");
    st.kind = ChainStep::Kind::Trivial;
    st.q = to_int(w[1], "q");
  } else if (w[0] == "det") {
    if (w.size() != 4) throw SchemaError("expected 'det M N R', got '" + b + "'");
    st.kind = ChainStep::Kind::Det;
    st.m = to_int(w[1], "m");
    st.n = to_int(w[2], "n");
    st.r = to_int(w[3], "r");
  } else if (w[0] == "powq") {
    st.kind = ChainStep::Kind::PowerQuotient;
    const std::size_t open = b.find('(');
    if (open == std::string::npos) throw SchemaError("expected 'powq (f1,...,fq) M', got '" + b + "'");
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = open; i < b.size(); ++i) {
      if (b[i] == '(') ++depth;
      if (b[i] == ')' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string::npos) throw SchemaError("unbalanced parentheses in '" + b + "'");
    st.sequence = split_top(b.substr(open + 1, close - open - 1));
    if (st.sequence.empty()) throw SchemaError("powq needs a nonempty sequence");
    st.exponent = to_int(b.substr(close + 1), "power");
  } else {
    throw SchemaError("unknown chain step '" + w[0] + "'");
  }
  return st;
}

void check_identifier(const std::string& v) {
  bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
  for (char ch : v) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
  if (!ok) throw SchemaError("invalid variable name '" + v + "'");
}

const nlohmann::json& field_of(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int json_int(const nlohmann::json& j, const char* key) {
  const auto& v = field_of(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<std::string> json_strings(const nlohmann::json& j, const char* key) {
  const auto& v = field_of(j, key);
  if (!v.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw SchemaError(std::string("field '") + key + "' must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

ChainStep json_step(const nlohmann::json& s) {
  if (!s.is_object()) throw SchemaError("chain steps must be objects");
  const auto& kind = field_of(s, "kind");
  if (!kind.is_string()) throw SchemaError("step kind must be a string");
  ChainStep st;
  const auto k = kind.get<std::string>();
  if (k == "trivial") {
    st.kind = ChainStep::Kind::Trivial;
    st.q = json_int(s, "q");
  } else if (k == "power_quotient") {
    st.kind = ChainStep::Kind::PowerQuotient;
    st.sequence = json_strings(s, "sequence");
    st.exponent = json_int(s, "m");
  } else if (k == "determinantal") {
    st.kind = ChainStep::Kind::Det;
    st.m = json_int(s, "m");
    st.n = json_int(s, "n");
    st.r = json_int(s, "r");
  } else {
    throw SchemaError("unknown step kind '" + k + "'");
  }
  return st;
}

std::string step_text(const ChainStep& s) {
  std::ostringstream os;
  switch (s.kind) {
    case ChainStep::Kind::Det: os << "det " << s.m << " " << s.n << " " << s.r; break;
    case ChainStep::Kind::Trivial: os << "triv " << s.q; break;
    case ChainStep::Kind::PowerQuotient: {
      os << "powq (";
      for (std::size_t i = 0; i < s.sequence.size(); ++i) os << (i ? "," : "") << s.sequence[i];
      os << ") " << s.exponent;
      break;
    }
  }
  return os.str();
}

}  // namespace

std::string RingSpec::field_name() const { return p == 0 ? "QQ" : "GF(" + std::to_string(p) + ")"; }

std::string RingSpec::construction() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Determinantal: os << "det " << m << " " << n << " " << r; break;
    case Kind::Chain:
      os << "chain";
      for (const auto& s : chain.steps) os << " [" << step_text(s) << "]";
      break;
    case Kind::Polynomial: {
      os << "poly [";
      for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? "," : "") << vars[i];
      os << "] [";
      for (std::size_t i = 0; i < relations.size(); ++i) os << (i ? "," : "") << relations[i];
      os << "]";
      break;
    }
  }
  return os.str();
}

std::string RingSpec::fingerprint() const {
  // FNV-1a over the normalized text
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : construction() + " over " + field_name()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

RingSpec parse_inline(const std::string& text) {
  const std::string t = trim(text);
  RingSpec s;
  const std::size_t sp = t.find_first_of(" \t\n");
  const std::string head = t.substr(0, sp);
  const std::string rest = sp == std::string::npos ? "" : trim(t.substr(sp));
  if (head == "det") {
    const auto w = words(rest);
    if (w.size() != 3) throw SchemaError("expected 'det M N R'");
    s.kind = RingSpec::Kind::Determinantal;
    s.m = to_int(w[0], "m");
    s.n = to_int(w[1], "n");
    s.r = to_int(w[2], "r");
  } else if (head == "chain") {
    s.kind = RingSpec::Kind::Chain;
    for (const auto& g : bracket_groups(rest)) s.chain.steps.push_back(parse_step(g));
    if (s.chain.steps.empty()) throw SchemaError("chain needs at least one [step]");
  } else if (head == "poly") {
    s.kind = RingSpec::Kind::Polynomial;
    const auto groups = bracket_groups(rest);
    if (groups.empty() || groups.size() > 2) throw SchemaError("expected 'poly [vars] [relations]'");
    for (const auto& v : split_top(groups[0])) {
      check_identifier(v);
      s.vars.push_back(v);
    }
    if (groups.size() == 2) s.relations = split_top(groups[1]);
  } else {
    throw SchemaError("unknown construction '" + head + "' (expected det, chain or poly)");
  }
  return s;
}

RingSpec parse_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("spec must be a JSON object");
  RingSpec s;
  if (j.contains("field")) {
    const auto& f = j.at("field");
    if (!f.is_object()) throw SchemaError("field must be an object");
    const auto& type = field_of(f, "type");
    if (!type.is_string()) throw SchemaError("field type must be a string");
    if (type == "prime") {
      const int p = json_int(f, "p");
      if (p < 2) throw SchemaError("field p must be at least 2");
      s.p = static_cast<std::uint32_t>(p);
    } else if (type == "rationals") {
      s.p = 0;
    } else {
      throw SchemaError("unknown field type");
    }
  }
  const auto& c = field_of(j, "construction");
  if (!c.is_object()) throw SchemaError("construction must be an object");
  const auto& kind = field_of(c, "kind");
  if (!kind.is_string()) throw SchemaError("construction kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "determinantal") {
    s.kind = RingSpec::Kind::Determinantal;
    s.m = json_int(c, "m");
    s.n = json_int(c, "n");
    s.r = json_int(c, "r");
  } else if (k == "chain") {
    s.kind = RingSpec::Kind::Chain;
    const auto& steps = field_of(c, "steps");
    if (!steps.is_array() || steps.empty()) throw SchemaError("steps must be a nonempty array");
    for (const auto& st : steps) s.chain.steps.push_back(json_step(st));
  } else if (k == "polynomial") {
    s.kind = RingSpec::Kind::Polynomial;
    s.vars = json_strings(c, "vars");
    for (const auto& v : s.vars) check_identifier(v);
    if (c.contains("relations")) s.relations = json_strings(c, "relations");
  } else {
    throw SchemaError("unknown construction kind '" + k + "'");
  }
  return s;
}

RingSpec load_spec(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw SchemaError("missing ring spec");
  if (tokens.size() == 1 && std::filesystem::is_regular_file(tokens[0])) {
    std::ifstream in(tokens[0]);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = trim(buf.str());
    if (!text.empty() && text[0] == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
      }
      return parse_json(j);
    }
    return parse_inline(text);
  }
  std::string joined;
  for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t;
  return parse_inline(joined);
}

}  // namespace canonica::cli
