#include <carrier/replay.hpp>

#include <carrier/errors.hpp>
#include <carrier/linalg.hpp>

#include <algorithm>
#include <map>
#include <optional>

namespace carrier {

namespace {

using nlohmann::json;

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw SchemaError("certificate: " + what);
}

Rational number(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  expect(j.is_string(), "rational expected");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Vector vec(const json& j) {
  expect(j.is_array(), "vector expected");
  Vector v;
  for (const auto& x : j) v.push_back(number(x));
  return v;
}

struct Fibers {
  std::vector<std::size_t> dim;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> link;
};

class Replayer {
 public:
  explicit Replayer(const json& c) : c_(c) {}

  ReplayResult run() {
    ReplayResult r;
    try {
      parse();
      checks(r);
    } catch (const Failure& f) {
      r.ok = false;
      r.failure = f.what;
    }
    return r;
  }

 private:
  void check(bool ok, const std::string& what, ReplayResult& r) {
    ++r.identities_checked;
    if (!ok) throw Failure{what};
  }

  std::size_t element(const json& j) const {
    expect(j.is_string(), "element name expected");
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == j.get<std::string>()) return i;
    throw SchemaError("certificate: unknown element '" + j.get<std::string>() + "'");
  }

  Fibers fibers(const json& sys) const {
    Fibers f;
    const auto n = names_.size();
    f.dim.assign(n, 0);
    f.offset.assign(n, 0);
    expect(sys.contains("dims") && sys.at("dims").is_object(), "system dims");
    for (const auto& [name, d] : sys.at("dims").items()) f.dim[element(json(name))] = d.get<std::size_t>();
    for (std::size_t g = 0; g < n; ++g) {
      f.offset[g] = f.total;
      f.total += f.dim[g];
      f.link.emplace(std::pair{g, g}, Matrix::identity(f.dim[g]));
    }
    for (const auto& [key, m] : sys.at("links").items()) {
      const auto sep = key.find("<=");
      expect(sep != std::string::npos, "link key");
      const auto g = element(json(key.substr(0, sep)));
      const auto h = element(json(key.substr(sep + 2)));
      std::vector<Vector> rows;
      for (const auto& row : m) rows.push_back(vec(row));
      Matrix mm = rows.empty() ? Matrix(f.dim[h], f.dim[g]) : Matrix::from_rows(rows, f.dim[g]);
      expect(mm.rows() == f.dim[h] && mm.cols() == f.dim[g], "link shape");
      f.link[{g, h}] = mm;
    }
    return f;
  }

  void parse() {
    expect(c_.is_object() && c_.value("kind", "") == "decomposition-certificate", "kind");
    const auto& m = c_.at("morphism");
    const auto& idx = m.at("source").at("index");
    for (const auto& e : idx.at("elements")) names_.push_back(e.get<std::string>());
    const auto n = names_.size();
    leq_.assign(n, std::vector<bool>(n));
    const auto& tbl = idx.at("leq");
    expect(tbl.size() == n, "leq rows");
    for (std::size_t a = 0; a < n; ++a) {
      expect(tbl[a].size() == n, "leq columns");
      for (std::size_t b = 0; b < n; ++b)
        leq_[a][b] = tbl[a][b].is_boolean() ? tbl[a][b].get<bool>() : tbl[a][b].get<int>() != 0;
    }
    expect(m.at("target").at("index") == idx, "source and target index differ");
    x_ = fibers(m.at("source"));
    y_ = fibers(m.at("target"));
    maps_.resize(n);
    for (const auto& [name, mat] : m.at("maps").items()) {
      const auto g = element(json(name));
      std::vector<Vector> rows;
      for (const auto& row : mat) rows.push_back(vec(row));
      maps_[g] = rows.empty() ? Matrix(y_.dim[g], x_.dim[g]) : Matrix::from_rows(rows, x_.dim[g]);
      expect(maps_[g].rows() == y_.dim[g] && maps_[g].cols() == x_.dim[g], "map shape");
    }
    for (const auto& e : c_.at("I")) i_.push_back(element(e));
    for (const auto& e : c_.at("J")) j_.push_back(element(e));
  }

  bool in(const std::vector<std::size_t>& s, std::size_t g) const {
    return std::find(s.begin(), s.end(), g) != s.end();
  }

  // Adds sigma(v, g, h) into the dense vector `out` of system f.
  void add_sigma(const Fibers& f, const Vector& v, std::size_t g, std::size_t h, Vector& out,
                 ReplayResult& r, const std::string& label) {
    check(v.size() == f.dim[g], label + ": vector has the wrong length", r);
    auto it = f.link.find({g, h});
    check(leq_[g][h] && it != f.link.end(), label + ": no link " + names_[g] + "<=" + names_[h], r);
    const auto img = it->second.apply(v);
    for (std::size_t k = 0; k < v.size(); ++k) out[f.offset[g] + k] += v[k];
    for (std::size_t k = 0; k < img.size(); ++k) out[f.offset[h] + k] -= img[k];
  }

  Vector apply_l(const Vector& xd) const {
    Vector out = zero_vector(y_.total);
    for (std::size_t g = 0; g < names_.size(); ++g) {
      Vector part(xd.begin() + x_.offset[g], xd.begin() + x_.offset[g] + x_.dim[g]);
      const auto img = maps_[g].apply(part);
      for (std::size_t k = 0; k < img.size(); ++k) out[y_.offset[g] + k] = img[k];
    }
    return out;
  }

  // sum of the first ny Y-terms plus L of the first nx X-terms.
  Vector partial(std::size_t ny, std::size_t nx, ReplayResult& r) {
    const auto& yt = c_.at("y_terms");
    const auto& xt = c_.at("x_terms");
    check(ny <= yt.size() && nx <= xt.size(), "stage term counts exceed the term lists", r);
    Vector ys = zero_vector(y_.total);
    for (std::size_t k = 0; k < ny; ++k)
      add_sigma(y_, vec(yt[k].at("vector")), element(yt[k].at("lower")), element(yt[k].at("upper")), ys,
                r, "y_terms[" + std::to_string(k) + "]");
    Vector xs = zero_vector(x_.total);
    for (std::size_t k = 0; k < nx; ++k)
      add_sigma(x_, vec(xt[k].at("vector")), element(xt[k].at("lower")), element(xt[k].at("upper")), xs,
                r, "x_terms[" + std::to_string(k) + "]");
    return add(ys, apply_l(xs));
  }

  void checks(ReplayResult& r) {
    const auto n = names_.size();
    for (std::size_t a = 0; a < n; ++a) {
      check(leq_[a][a], "order is not reflexive", r);
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b) check(!(leq_[a][b] && leq_[b][a]), "order is not antisymmetric", r);
        for (std::size_t d = 0; d < n; ++d)
          if (leq_[a][b] && leq_[b][d]) check(leq_[a][d], "order is not transitive", r);
      }
    }
    for (const auto& [key, link] : x_.link) {
      if (key.first == key.second) continue;
      auto it = y_.link.find(key);
      check(it != y_.link.end() &&
                maps_[key.second] * link == it->second * maps_[key.first],
            "morphism square fails on " + names_[key.first] + "<=" + names_[key.second], r);
    }
    for (auto g : i_)
      for (std::size_t h = 0; h < n; ++h)
        if (leq_[h][g]) check(in(i_, h), "I is not hereditary at " + names_[h], r);
    for (auto a : j_)
      for (auto b : j_) {
        std::optional<std::size_t> glb;
        for (std::size_t m = 0; m < n; ++m) {
          if (!leq_[m][a] || !leq_[m][b]) continue;
          bool greatest = true;
          for (std::size_t o = 0; o < n; ++o)
            if (leq_[o][a] && leq_[o][b] && !leq_[o][m]) greatest = false;
          if (greatest) glb = m;
        }
        check(glb.has_value() && in(j_, *glb),
              "J is not closed under meets at " + names_[a] + ", " + names_[b], r);
      }
    for (const auto& t : c_.at("y_terms"))
      check(in(i_, element(t.at("lower"))) && in(i_, element(t.at("upper"))),
            "a Y-term is not indexed by a pair in I", r);
    for (const auto& t : c_.at("x_terms"))
      check(in(j_, element(t.at("lower"))) && in(j_, element(t.at("upper"))),
            "an X-term is not indexed by a pair in J", r);

    Vector input = zero_vector(y_.total);
    for (const auto& [name, v] : c_.at("input").items()) {
      const auto g = element(json(name));
      const auto vv = vec(v);
      check(vv.size() == y_.dim[g], "input component has the wrong length", r);
      for (std::size_t k = 0; k < vv.size(); ++k) input[y_.offset[g] + k] = vv[k];
    }
    const auto total = partial(c_.at("y_terms").size(), c_.at("x_terms").size(), r);
    check(total == input, "terms do not sum to the input", r);

    // k(g) = |{h in J : h >= g}|
    std::vector<std::size_t> k(n, 0);
    for (auto g : j_)
      for (auto h : j_)
        if (leq_[g][h]) ++k[g];
    const auto& stages = c_.at("stages");
    check(!stages.empty(), "no stages recorded", r);
    std::size_t order = 0;
    for (const auto& st : stages) {
      const auto o = st.at("order").get<std::size_t>();
      check(o == order + 1, "stage orders are not consecutive", r);
      order = o;
      auto sum = partial(st.at("y_terms").get<std::size_t>(), st.at("x_terms").get<std::size_t>(), r);
      for (const auto& t : st.at("family")) {
        const auto g = element(t.at("lower"));
        const auto h = element(t.at("upper"));
        const auto label = "stage " + std::to_string(o) + " family";
        check(in(j_, g) && k[g] >= o, label + ": lower index outside C_n", r);
        check(in(j_, h) && !in(i_, h) && g != h, label + ": upper index outside J minus I", r);
        add_sigma(y_, vec(t.at("vector")), g, h, sum, r, label);
      }
      check(sum == input, "stage " + std::to_string(o) + " does not reproduce the input", r);
    }
    check(stages.back().at("family").empty(), "final stage still has a residual family", r);
    check(c_.at("final_order").get<std::size_t>() == order && order > j_.size(),
          "final order does not exceed |J|", r);
  }

  const json& c_;
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  Fibers x_;
  Fibers y_;
  std::vector<Matrix> maps_;
  std::vector<std::size_t> i_;
  std::vector<std::size_t> j_;
};

}  // namespace

ReplayResult replay_certificate(const nlohmann::json& certificate) {
  try {
    return Replayer(certificate).run();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("certificate: ") + e.what());
  }
}

}  // namespace carrier
