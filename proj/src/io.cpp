#include <carrier/io.hpp>

#include <fstream>
#include <sstream>

namespace carrier::io {

namespace {

constexpr std::size_t kMaxIndex = 16;
constexpr std::size_t kMaxFiber = 8;

void expect(bool ok, const std::string& what) {
  if (!ok) throw SchemaError(what);
}

std::size_t element(const Poset& p, const json& j) {
  expect(j.is_string(), "index element must be a string");
  const auto at = p.find(j.get<std::string>());
  expect(at.has_value(), "unknown index element '" + j.get<std::string>() + "'");
  return *at;
}

std::string pair_key(const Poset& p, std::size_t g, std::size_t h) {
  return p.name(g) + "<=" + p.name(h);
}

json terms_to_json(const Poset& p, const std::vector<SigmaTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms)
    out.push_back({{"vector", vector_to_json(t.vector)},
                   {"lower", p.name(t.lower)},
                   {"upper", p.name(t.upper)}});
  return out;
}

}  // namespace

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  expect(j.is_string(), "rational must be a string \"p/q\" or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rational_to_json(x));
  return out;
}

Vector vector_from_json(const json& j) {
  expect(j.is_array(), "vector must be an array");
  Vector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  expect(j.is_array(), "matrix must be an array of rows");
  if (j.empty()) {
    expect(rows == 0 || cols == 0, "empty matrix where a nonzero shape is expected");
    return Matrix(rows, cols);
  }
  expect(j.size() == rows, "matrix has the wrong number of rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = vector_from_json(j[r]);
    expect(row.size() == cols, "matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

json poset_to_json(const Poset& p) {
  json leq = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < p.size(); ++k) row.push_back(p.leq(i, k) ? 1 : 0);
    leq.push_back(row);
  }
  return {{"elements", p.elements()}, {"leq", leq}};
}

Poset poset_from_json(const json& j) {
  expect(j.is_object() && j.contains("elements") && j.contains("leq"),
         "poset needs \"elements\" and \"leq\"");
  std::vector<std::string> names;
  for (const auto& e : j.at("elements")) {
    expect(e.is_string(), "poset elements must be strings");
    names.push_back(e.get<std::string>());
  }
  for (std::size_t a = 0; a < names.size(); ++a)
    for (std::size_t b = a + 1; b < names.size(); ++b)
      expect(names[a] != names[b], "duplicate poset element '" + names[a] + "'");
  const auto& leq = j.at("leq");
  expect(leq.is_array() && leq.size() == names.size(), "leq must have one row per element");
  std::vector<std::vector<bool>> table;
  for (const auto& row : leq) {
    expect(row.is_array() && row.size() == names.size(), "leq must be square");
    std::vector<bool> r;
    for (const auto& x : row) {
      expect(x.is_boolean() || x.is_number_integer(), "leq entries must be 0/1 or booleans");
      r.push_back(x.is_boolean() ? x.get<bool>() : x.get<int>() != 0);
    }
    table.push_back(std::move(r));
  }
  return Poset(std::move(names), std::move(table));
}

json index_set_to_json(const Poset& p, IndexSet s) {
  json out = json::array();
  for (auto g : s.members()) out.push_back(p.name(g));
  return out;
}

IndexSet index_set_from_json(const Poset& p, const json& j) {
  expect(j.is_array(), "index set must be an array of element names");
  IndexSet s;
  for (const auto& e : j) s.add(element(p, e));
  return s;
}

json system_to_json(const InductiveSystem& x) {
  const auto& p = x.index();
  json dims = json::object();
  for (std::size_t g = 0; g < x.size(); ++g) dims[p.name(g)] = x.dim(g);
  json links = json::object();
  for (const auto& [key, m] : x.links())
    if (key.first != key.second) links[pair_key(p, key.first, key.second)] = matrix_to_json(m);
  return {{"schema_version", kSchemaVersion}, {"index", poset_to_json(p)}, {"dims", dims}, {"links", links}};
}

InductiveSystem system_from_json(const json& j) {
  expect(j.is_object() && j.contains("index") && j.contains("dims"),
         "system needs \"index\" and \"dims\"");
  auto p = poset_from_json(j.at("index"));
  expect(p.size() <= kMaxIndex, "index sets are limited to 16 elements");
  std::vector<std::size_t> dims(p.size());
  const auto& jd = j.at("dims");
  expect(jd.is_object() && jd.size() == p.size(), "dims must name every index element");
  for (const auto& [name, d] : jd.items()) {
    expect(d.is_number_unsigned(), "dims must be non-negative integers");
    const auto g = element(p, name);
    dims[g] = d.get<std::size_t>();
    expect(dims[g] <= kMaxFiber, "fiber dimensions are limited to 8");
  }
  std::map<IndexPair, Matrix> links;
  if (j.contains("links")) {
    expect(j.at("links").is_object(), "links must be an object keyed \"a<=b\"");
    for (const auto& [key, m] : j.at("links").items()) {
      const auto sep = key.find("<=");
      expect(sep != std::string::npos, "link key '" + key + "' must have the form a<=b");
      const auto g = element(p, key.substr(0, sep));
      const auto h = element(p, key.substr(sep + 2));
      links.emplace(IndexPair{g, h}, matrix_from_json(m, dims[h], dims[g]));
    }
  }
  return InductiveSystem(std::move(p), std::move(dims), std::move(links));
}

json morphism_to_json(const SystemMorphism& l) {
  const auto& p = l.source().index();
  json maps = json::object();
  for (std::size_t g = 0; g < p.size(); ++g) maps[p.name(g)] = matrix_to_json(l.at(g));
  return {{"schema_version", kSchemaVersion},
          {"source", system_to_json(l.source())},
          {"target", system_to_json(l.target())},
          {"maps", maps}};
}

SystemMorphism morphism_from_json(const json& j) {
  expect(j.is_object() && j.contains("source") && j.contains("target") && j.contains("maps"),
         "morphism needs \"source\", \"target\" and \"maps\"");
  auto x = system_from_json(j.at("source"));
  auto y = system_from_json(j.at("target"));
  const auto& p = x.index();
  expect(p == y.index(), "source and target must share the index poset");
  const auto& jm = j.at("maps");
  expect(jm.is_object() && jm.size() == p.size(), "maps must name every index element");
  std::vector<Matrix> maps(p.size());
  for (const auto& [name, m] : jm.items()) {
    const auto g = element(p, name);
    maps[g] = matrix_from_json(m, y.dim(g), x.dim(g));
  }
  return SystemMorphism(std::move(x), std::move(y), std::move(maps));
}

json sum_vector_to_json(const Poset& p, const SumVector& s) {
  json out = json::object();
  for (const auto& [g, v] : s.components()) out[p.name(g)] = vector_to_json(v);
  return out;
}

SumVector sum_vector_from_json(const Poset& p, const json& j) {
  expect(j.is_object(), "sum vector must be an object keyed by index element");
  SumVector s;
  for (const auto& [name, v] : j.items()) s.add(element(p, name), vector_from_json(v));
  return s;
}

json certificate_to_json(const DecompositionCertificate& c) {
  const auto& p = c.morphism.target().index();
  json stages = json::array();
  for (const auto& st : c.stages)
    stages.push_back({{"order", st.order},
                      {"family", terms_to_json(p, st.family)},
                      {"y_terms", st.y_terms},
                      {"x_terms", st.x_terms}});
  return {{"schema_version", kSchemaVersion},
          {"kind", "decomposition-certificate"},
          {"morphism", morphism_to_json(c.morphism)},
          {"I", index_set_to_json(p, c.i)},
          {"J", index_set_to_json(p, c.j)},
          {"input", sum_vector_to_json(p, c.input)},
          {"y_terms", terms_to_json(p, c.y_terms)},
          {"x_terms", terms_to_json(p, c.x_terms)},
          {"stages", stages},
          {"final_order", c.final_order}};
}

json family_to_json(const SetFamily& f) {
  json members = json::array();
  for (auto m : f.members) {
    json pts = json::array();
    for (std::size_t i = 0; i < f.points; ++i)
      if ((m >> i) & 1U) pts.push_back(i + 1);
    members.push_back(pts);
  }
  return {{"points", f.points}, {"members", members}};
}

SetFamily family_from_json(const json& j) {
  expect(j.is_object() && j.contains("points") && j.contains("members"),
         "family needs \"points\" and \"members\"");
  SetFamily f;
  expect(j.at("points").is_number_unsigned(), "points must be a non-negative integer");
  f.points = j.at("points").get<std::size_t>();
  expect(f.points <= 6, "families are limited to 6 points");
  for (const auto& m : j.at("members")) {
    expect(m.is_array(), "members must be arrays of point labels 1..points");
    std::uint64_t mask = 0;
    for (const auto& pt : m) {
      expect(pt.is_number_unsigned(), "point labels must be positive integers");
      const auto k = pt.get<std::size_t>();
      expect(k >= 1 && k <= f.points, "point label out of range");
      mask |= std::uint64_t{1} << (k - 1);
    }
    f.members.push_back(mask);
  }
  std::sort(f.members.begin(), f.members.end());
  f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
  return f;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SchemaError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace carrier::io
