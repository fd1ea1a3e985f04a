#include "gconn/manifest.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <variant>

namespace gconn {

// --- minimal TOML subset ------------------------------------------------------
//
// Supports [section] headers and key = value lines where value is a string,
// number, boolean, or (nested) array. Comments start with '#'.

namespace {

struct TomlValue {
  std::variant<std::string, double, bool, std::vector<TomlValue>> v;

  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_number() const { return std::holds_alternative<double>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_array() const { return std::holds_alternative<std::vector<TomlValue>>(v); }
  const std::string& str() const { return std::get<std::string>(v); }
  double num() const { return std::get<double>(v); }
  bool boolean() const { return std::get<bool>(v); }
  const std::vector<TomlValue>& array() const { return std::get<std::vector<TomlValue>>(v); }
};

using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

struct TomlParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws_inline() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  void skip_ws_and_comments() {
    for (;;) {
      skip_ws_inline();
      if (pos < text.size() && text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      }
      if (pos < text.size() && (text[pos] == '\n' || text[pos] == '\r')) {
        ++pos;
        continue;
      }
      return;
    }
  }

  TomlValue value() {
    skip_ws_inline();
    if (pos >= text.size()) throw ParseError("unexpected end of manifest", pos, "value");
    char c = text[pos];
    if (c == '"') {
      ++pos;
      std::string s;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
        s += text[pos++];
      }
      if (pos >= text.size()) throw ParseError("unterminated string", pos, "'\"'");
      ++pos;
      return TomlValue{s};
    }
    if (c == '[') {
      ++pos;
      std::vector<TomlValue> items;
      for (;;) {
        skip_ws_and_comments();
        if (pos < text.size() && text[pos] == ']') {
          ++pos;
          break;
        }
        items.push_back(value());
        skip_ws_and_comments();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        skip_ws_and_comments();
        if (pos < text.size() && text[pos] == ']') {
          ++pos;
          break;
        }
        throw ParseError("expected ',' or ']' in array", pos, "',' or ']'");
      }
      return TomlValue{items};
    }
    if (text.compare(pos, 4, "true") == 0) {
      pos += 4;
      return TomlValue{true};
    }
    if (text.compare(pos, 5, "false") == 0) {
      pos += 5;
      return TomlValue{false};
    }
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double d = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed value", pos, "number, string, bool or array");
    pos += static_cast<std::size_t>(end - begin);
    return TomlValue{d};
  }

  TomlTable parse() {
    TomlTable table;
    std::string section;
    while (true) {
      skip_ws_and_comments();
      if (pos >= text.size()) break;
      if (text[pos] == '[') {
        ++pos;
        std::string name;
        while (pos < text.size() && text[pos] != ']') name += text[pos++];
        if (pos >= text.size()) throw ParseError("unterminated section header", pos, "']'");
        ++pos;
        section = name;
        table[section];
        continue;
      }
      std::string key;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        key += text[pos++];
      if (key.empty()) throw ParseError("expected key", pos, "identifier");
      skip_ws_inline();
      if (pos >= text.size() || text[pos] != '=')
        throw ParseError("expected '=' after key", pos, "'='");
      ++pos;
      table[section][key] = value();
    }
    return table;
  }
};

std::vector<std::string> string_array(const TomlValue& v, const std::string& field) {
  if (!v.is_array()) throw ValidationError(field, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v.array()) {
    if (!item.is_string()) throw ValidationError(field, "expected an array of strings");
    out.push_back(item.str());
  }
  return out;
}

std::vector<std::vector<std::string>> string_matrix(const TomlValue& v, const std::string& field) {
  if (!v.is_array()) throw ValidationError(field, "expected an array of rows");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : v.array()) out.push_back(string_array(row, field));
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<Point> sample_box(const std::vector<std::pair<double, double>>& domain, int count,
                              std::uint64_t seed) {
  std::uint64_t state = seed;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) {
    Point p;
    for (const auto& [lo, hi] : domain) {
      double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
      p.push_back(lo + (hi - lo) * u);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

OrthoFrame Manifest::ricci_frame() const {
  if (frame) return *frame;
  return OrthoFrame::orthonormalize(*metric);
}

DistributionSplit Manifest::split() const {
  if (distribution.empty())
    throw ValidationError("distribution.D", "manifest has no distribution section");
  if (frame) return DistributionSplit(frame->rows(), distribution);
  return DistributionSplit::coordinate(dim(), distribution);
}

Derivation Manifest::parse_derivation(const std::string& text) const {
  Derivation out(dim());
  // sum of terms: [form-literal *] ('L'|'i') '(' name ')'
  int depth = 0;
  std::vector<std::pair<int, std::string>> pieces;
  int sign = 1;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      if (cur.find_first_not_of(" \t") == std::string::npos) {
        if (c == '-') sign = -sign;
        continue;
      }
      pieces.emplace_back(sign, cur);
      sign = c == '-' ? -1 : 1;
      cur.clear();
      continue;
    }
    cur += c;
  }
  pieces.emplace_back(sign, cur);

  for (auto& [s, piece] : pieces) {
    std::size_t gen_pos = std::string::npos;
    Gen gen = Gen::L;
    for (std::size_t i = 0; i + 1 < piece.size(); ++i) {
      if ((piece[i] == 'L' || piece[i] == 'i') && piece[i + 1] == '(' &&
          (i == 0 || !std::isalnum(static_cast<unsigned char>(piece[i - 1])))) {
        gen_pos = i;
        gen = piece[i] == 'L' ? Gen::L : Gen::I;
      }
    }
    if (gen_pos == std::string::npos)
      throw ParseError("derivation term lacks an L(...) or i(...) generator", 0, "L(v) or i(v)");
    std::size_t close = piece.find(')', gen_pos);
    if (close == std::string::npos) throw ParseError("unterminated generator call", gen_pos, "')'");
    std::string name = piece.substr(gen_pos + 2, close - gen_pos - 2);
    std::size_t a = name.find_first_not_of(" \t");
    std::size_t b = name.find_last_not_of(" \t");
    name = a == std::string::npos ? "" : name.substr(a, b - a + 1);

    VectorField v(dim());
    if (auto it = vectors.find(name); it != vectors.end()) {
      v = it->second;
    } else if (name.size() >= 2 && (name[0] == 'd' || name[0] == 'E') &&
               name.find_first_not_of("0123456789", 1) == std::string::npos) {
      int idx = std::stoi(name.substr(1));
      if (idx < 1 || idx > dim()) throw ValidationError("vector." + name, "index out of range");
      if (name[0] == 'd') {
        v = VectorField::coordinate(dim(), idx);
      } else {
        if (!frame) throw ValidationError("vector." + name, "manifest has no frame section");
        v = frame->row(idx);
      }
    } else {
      throw ValidationError("vector." + name, "unknown vector field");
    }

    std::string prefix = piece.substr(0, gen_pos);
    std::size_t star = prefix.find_last_of('*');
    Form coeff = Form::scalar(dim(), 1.0);
    if (star != std::string::npos) prefix = prefix.substr(0, star);
    std::size_t nonws = prefix.find_first_not_of(" \t");
    if (nonws != std::string::npos) coeff = parse_form(prefix, coords);
    if (s < 0) coeff = -coeff;

    Derivation lifted = gen == Gen::L ? Derivation::lift_L(v) : Derivation::lift_i(v);
    out = out + mul_left(coeff, lifted);
  }
  return out;
}

Manifest parse_manifest_text(const std::string& text, const std::string& hash_source) {
  TomlParser parser{text, 0};
  TomlTable table = parser.parse();

  auto section = [&](const std::string& name) -> const std::map<std::string, TomlValue>* {
    auto it = table.find(name);
    return it == table.end() ? nullptr : &it->second;
  };
  auto field = [&](const std::string& sec, const std::string& key) -> const TomlValue* {
    const auto* s = section(sec);
    if (!s) return nullptr;
    auto it = s->find(key);
    return it == s->end() ? nullptr : &it->second;
  };

  Manifest m;
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(hash_source)));
  m.manifest_hash = buf;

  const TomlValue* coords = field("chart", "coords");
  if (!coords) throw ValidationError("chart.coords", "missing coordinate names");
  m.coords = string_array(*coords, "chart.coords");
  int dim = m.dim();
  if (dim < 1) throw ValidationError("chart.coords", "empty chart");

  const TomlValue* metric_rows = field("metric", "rows");
  if (!metric_rows) throw ValidationError("metric.rows", "missing metric matrix");
  auto rows = string_matrix(*metric_rows, "metric.rows");
  if (static_cast<int>(rows.size()) != dim)
    throw ValidationError("metric.rows", "row count differs from chart dimension");
  std::vector<std::vector<ScalarExpr>> g;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim)
      throw ValidationError("metric.rows", "column count differs from chart dimension");
    std::vector<ScalarExpr> out_row;
    for (const auto& e : row) {
      try {
        out_row.push_back(parse_expr(e, m.coords));
      } catch (const UnknownIdentifier& u) {
        throw ValidationError("metric.rows", u.what());
      }
    }
    g.push_back(std::move(out_row));
  }
  m.metric = std::make_shared<MetricG>(dim, std::move(g));
  m.lc = std::make_shared<LeviCivitaLift>(m.metric);

  if (const TomlValue* fr = field("frame", "rows")) {
    std::vector<VectorField> frows;
    for (const auto& row : string_matrix(*fr, "frame.rows"))
      frows.push_back(parse_vector(row, m.coords));
    if (static_cast<int>(frows.size()) != dim)
      throw ValidationError("frame.rows", "row count differs from chart dimension");
    m.frame = OrthoFrame(std::move(frows));
  }

  if (const TomlValue* pf = field("parallel_frame", "rows")) {
    std::vector<VectorField> frows;
    for (const auto& row : string_matrix(*pf, "parallel_frame.rows"))
      frows.push_back(parse_vector(row, m.coords));
    if (static_cast<int>(frows.size()) != dim)
      throw ValidationError("parallel_frame.rows", "row count differs from chart dimension");
    m.parallel_frame = std::make_shared<ParallelFrame>(std::move(frows));
    if (const TomlValue* sc = field("parallel_frame", "structure_constant"))
      m.structure_constant_claimed = sc->is_bool() && sc->boolean();
    if (const TomlValue* bl = field("parallel_frame", "blend"))
      m.blend = parse_form(bl->str(), m.coords);
    if (const TomlValue* ls = field("parallel_frame", "lambdas")) {
      m.lambdas.clear();
      for (const auto& v : ls->array()) m.lambdas.push_back(v.num());
    }
  }

  if (const auto* vecs = section("vectors")) {
    for (const auto& [name, v] : *vecs)
      m.vectors.emplace(name, parse_vector(string_array(v, "vectors." + name), m.coords));
  }
  if (const auto* forms = section("forms")) {
    for (const auto& [name, v] : *forms) {
      if (!v.is_string()) throw ValidationError("forms." + name, "expected a form literal string");
      m.forms.emplace(name, parse_form(v.str(), m.coords));
    }
  }

  if (const TomlValue* p = field("connection", "P")) {
    m.p_spec = p->str();
  }
  // resolve the P specification
  {
    const std::string& spec = m.p_spec;
    auto strip = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t");
      std::size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string s = strip(spec);
    m.p = Derivation(dim);
    if (s.empty() || s == "none") {
      // zero P: the plain lifted Levi-Civita connection
    } else if (s.rfind("i(", 0) == 0 && s.back() == ')') {
      std::string name = strip(s.substr(2, s.size() - 3));
      auto it = m.vectors.find(name);
      if (it == m.vectors.end())
        throw ValidationError("vector." + name, "P references an undefined vector");
      m.p_u = it->second;
      m.p = Derivation::lift_i(it->second);
    } else if (std::size_t star = s.find("*L("); star != std::string::npos && s.back() == ')') {
      std::string fname = strip(s.substr(0, star));
      std::string vname = strip(s.substr(star + 3, s.size() - star - 4));
      auto fit = m.forms.find(fname);
      if (fit == m.forms.end())
        throw ValidationError("form." + fname, "P references an undefined form");
      auto vit = m.vectors.find(vname);
      if (vit == m.vectors.end())
        throw ValidationError("vector." + vname, "P references an undefined vector");
      m.p_omega = fit->second;
      m.p_u = vit->second;
      m.p = mul_left(fit->second, Derivation::lift_L(vit->second));
    } else {
      throw ValidationError("connection.P", "expected \"i(U)\", \"<form>*L(U)\" or \"none\"");
    }
  }

  if (const TomlValue* d = field("distribution", "D")) {
    if (!d->is_array()) throw ValidationError("distribution.D", "expected an index array");
    for (const auto& v : d->array()) {
      int idx = static_cast<int>(v.num());
      if (idx < 1 || idx > dim) throw ValidationError("distribution.D", "index out of range");
      m.distribution.insert(idx);
    }
  }

  if (const TomlValue* pts = field("samples", "points")) {
    for (const auto& row : pts->array()) {
      Point p;
      for (const auto& c : row.array()) p.push_back(c.num());
      if (static_cast<int>(p.size()) != dim)
        throw ValidationError("samples.points", "point dimension differs from chart");
      m.points.push_back(std::move(p));
    }
  } else {
    const TomlValue* count = field("samples", "count");
    const TomlValue* seed = field("samples", "seed");
    const TomlValue* domain = field("samples", "domain");
    if (!count || !seed || !domain)
      throw ValidationError("samples", "need either points or count+seed+domain");
    std::vector<std::pair<double, double>> box;
    for (const auto& row : domain->array()) {
      const auto& arr = row.array();
      if (arr.size() != 2) throw ValidationError("samples.domain", "each entry is [lo, hi]");
      box.emplace_back(arr[0].num(), arr[1].num());
    }
    if (static_cast<int>(box.size()) != dim)
      throw ValidationError("samples.domain", "domain dimension differs from chart");
    m.points = sample_box(box, static_cast<int>(count->num()),
                          static_cast<std::uint64_t>(seed->num()));
  }
  if (m.points.empty()) throw ValidationError("samples", "no sample points");

  if (const TomlValue* tol = field("check", "tolerance")) m.tolerance = tol->num();

  // reject singular or non-positive-definite metrics at the sample points
  for (const auto& p : m.points) {
    m.metric->check_invertible_at(p);
    if (!m.metric->positive_definite_at(p))
      throw SingularMetric("metric is not positive definite at a sample point");
  }
  if (m.frame) {
    for (const auto& p : m.points) m.frame->validate_at(*m.metric, p);
  }
  if (m.parallel_frame && m.structure_constant_claimed)
    m.parallel_frame->require_constant_structure(m.points);

  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("manifest", "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest_text(ss.str(), ss.str());
}

}  // namespace gconn
