#include "factoria/io.hpp"

#include <fstream>
#include <set>

namespace factoria {

namespace {

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw InputError("unknown field '" + it.key() + "' in " + what);
}

const Json& need(const Json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError("missing field '" + std::string(key) + "' in " + what);
  return *it;
}

Scalar scalar_from_json(const Json& j, const FieldSpec& f) {
  try {
    if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    if (j.is_number_integer()) return Scalar(f, j.get<long>());
  } catch (const FieldError& e) {
    throw InputError(e.what());
  }
  throw InputError("scalar must be a string or an integer");
}

int int_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + " must be an integer");
  return j.get<int>();
}

Orientation orientation_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("orientation must be a string");
  std::string s = j.get<std::string>();
  if (s == "row") return Orientation::row;
  if (s == "column") return Orientation::column;
  throw InputError("orientation must be \"row\" or \"column\"");
}

}  // namespace

FieldSpec field_from_json(const Json& j) {
  only_keys(j, {"kind", "p"}, "field");
  std::string kind = need(j, "kind", "field").is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "rational" || kind == "rationals") {
    if (j.contains("p")) throw InputError("rational field takes no modulus");
    return FieldSpec::rationals();
  }
  if (kind == "fp") {
    const Json& p = need(j, "p", "field");
    if (!p.is_number_unsigned()) throw InputError("field modulus must be a positive integer");
    try {
      return FieldSpec::prime(p.get<uint64_t>());
    } catch (const FieldError& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("field kind must be \"fp\" or \"rational\"");
}

Json field_to_json(const FieldSpec& f) {
  Json j;
  if (f.is_prime()) {
    j["kind"] = "fp";
    j["p"] = f.p;
  } else {
    j["kind"] = "rational";
  }
  return j;
}

RingData ring_from_json(const Json& j) {
  only_keys(j, {"n", "field", "q", "l", "omega"}, "ring");
  const int n = int_from_json(need(j, "n", "ring"), "n");
  if (n < 0 || n > kMaxVars) throw InputError("ring must have between 0 and " + std::to_string(kMaxVars) + " variables");
  FieldSpec f = field_from_json(need(j, "field", "ring"));
  try {
    if (j.contains("omega")) {
      if (j.contains("q") || j.contains("l")) throw InputError("a ring with explicit omega takes neither q nor l");
      const Json& om = j["omega"];
      if (!om.is_array() || static_cast<int>(om.size()) != n) throw InputError("omega must list n polynomials");
      RingData probe = RingData::make_commutative(f, std::vector<int>(n, 1));
      std::vector<QPoly> omegas;
      for (const auto& p : om) omegas.push_back(poly_from_json(p, probe));
      for (const auto& w : omegas) {
        if (w.is_zero()) throw InputError("omega must be nonzero");
      }
      return RingData::make_custom_omega(f, omegas);
    }
    const Json& lj = need(j, "l", "ring");
    if (!lj.is_array() || static_cast<int>(lj.size()) != n) throw InputError("l must list n exponents");
    std::vector<int> l;
    for (const auto& v : lj) l.push_back(int_from_json(v, "l entry"));
    if (!j.contains("q")) return RingData::make_commutative(f, l);
    const Json& qj = j["q"];
    if (!qj.is_array() || static_cast<int>(qj.size()) != n) throw InputError("q must be an n x n table");
    std::vector<std::vector<Scalar>> q;
    for (const auto& row : qj) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) throw InputError("q must be an n x n table");
      std::vector<Scalar> r;
      for (const auto& v : row) r.push_back(scalar_from_json(v, f));
      q.push_back(std::move(r));
    }
    return RingData::make_quantum(f, q, l);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const FieldError& e) {
    throw InputError(e.what());
  }
}

Json ring_to_json(const RingData& r) {
  Json j;
  j["n"] = r.n;
  j["field"] = field_to_json(r.field);
  if (r.custom_omega) {
    Json om = Json::array();
    for (const auto& w : r.omega) om.push_back(poly_to_json(w, r));
    j["omega"] = om;
    return j;
  }
  if (!r.commutative) {
    Json q = Json::array();
    for (int a = 0; a < r.n; ++a) {
      Json row = Json::array();
      for (int b = 0; b < r.n; ++b) row.push_back(r.qij(a, b).str());
      q.push_back(row);
    }
    j["q"] = q;
  }
  j["l"] = r.l;
  return j;
}

TypeData type_from_json(const Json& j, const RingData& r) {
  only_keys(j, {"sigmas", "xi"}, "type");
  TypeData t;
  t.n = r.n;
  const Json& sj = need(j, "sigmas", "type");
  const Json& xj = need(j, "xi", "type");
  if (!sj.is_array() || static_cast<int>(sj.size()) != r.n) throw InputError("sigmas must list n automorphisms");
  for (const auto& s : sj) {
    if (!s.is_array() || static_cast<int>(s.size()) != r.n) throw InputError("each sigma must list n scalars");
    DiagonalAut a = DiagonalAut::identity(r);
    for (int k = 0; k < r.n; ++k) {
      a.c[k] = scalar_from_json(s[k], r.field);
      if (a.c[k].is_zero()) throw InputError("automorphism scalars must be nonzero");
    }
    t.sigmas.push_back(a);
  }
  if (!xj.is_array() || static_cast<int>(xj.size()) != r.n) throw InputError("xi must be an n x n table");
  t.xi.assign(r.n * r.n, Scalar::one(r.field));
  for (int a = 0; a < r.n; ++a) {
    if (!xj[a].is_array() || static_cast<int>(xj[a].size()) != r.n) throw InputError("xi must be an n x n table");
    for (int b = a + 1; b < r.n; ++b) {
      t.xi[a * r.n + b] = scalar_from_json(xj[a][b], r.field);
      if (t.xi[a * r.n + b].is_zero()) throw InputError("xi entries must be nonzero");
    }
  }
  return t;
}

Json type_to_json(const TypeData& t, const RingData& r) {
  Json j;
  Json s = Json::array();
  for (const auto& a : t.sigmas) {
    Json row = Json::array();
    for (int k = 0; k < r.n; ++k) row.push_back(a.c[k].str());
    s.push_back(row);
  }
  j["sigmas"] = s;
  Json x = Json::array();
  for (int a = 0; a < r.n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < r.n; ++b) row.push_back(a < b ? t.xi[a * r.n + b].str() : "1");
    x.push_back(row);
  }
  j["xi"] = x;
  return j;
}

QPoly poly_from_json(const Json& j, const RingData& r) {
  if (!j.is_array()) throw InputError("polynomial must be a list of terms");
  std::vector<Term> terms;
  for (const auto& t : j) {
    only_keys(t, {"c", "e"}, "term");
    Scalar c = scalar_from_json(need(t, "c", "term"), r.field);
    const Json& e = need(t, "e", "term");
    if (!e.is_array() || static_cast<int>(e.size()) != r.n) throw InputError("exponent vector must have length n");
    Monomial m;
    for (int k = 0; k < r.n; ++k) {
      int v = int_from_json(e[k], "exponent");
      if (v < 0 || v > 60000) throw InputError("exponent out of range");
      m.e[k] = static_cast<uint16_t>(v);
    }
    terms.push_back({m, c});
  }
  // Combine repeated monomials.
  QPoly p;
  for (const auto& t : terms) p += QPoly::monomial(t.m, t.c);
  return p;
}

Json poly_to_json(const QPoly& p, const RingData& r) {
  Json j = Json::array();
  for (const auto& t : p.terms()) {
    Json e = Json::array();
    for (int k = 0; k < r.n; ++k) e.push_back(t.m.e[k]);
    Json term;
    term["c"] = t.c.str();
    term["e"] = e;
    j.push_back(term);
  }
  return j;
}

PolyMatrix matrix_from_json(const Json& j, const RingData& r, Orientation fallback) {
  only_keys(j, {"rows", "cols", "orientation", "entries"}, "matrix");
  const int rows = int_from_json(need(j, "rows", "matrix"), "rows");
  const int cols = int_from_json(need(j, "cols", "matrix"), "cols");
  if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be nonnegative");
  Orientation o = j.contains("orientation") ? orientation_from_json(j["orientation"]) : fallback;
  const Json& e = need(j, "entries", "matrix");
  if (!e.is_array() || static_cast<int>(e.size()) != rows) throw InputError("matrix entries do not match rows");
  PolyMatrix m(rows, cols);
  for (int a = 0; a < rows; ++a) {
    if (!e[a].is_array() || static_cast<int>(e[a].size()) != cols) throw InputError("matrix entries do not match cols");
    for (int b = 0; b < cols; ++b) m.at(a, b) = poly_from_json(e[a][b], r);
  }
  if (o == Orientation::column) {
    if (!r.commutative) throw InputError("column orientation is only accepted over commutative rings; write noncommutative matrices row-oriented");
    return m.transpose();
  }
  return m;
}

Json matrix_to_json(const PolyMatrix& m0, const RingData& r, Orientation o) {
  PolyMatrix m = o == Orientation::column ? m0.transpose() : m0;
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["orientation"] = o == Orientation::column ? "column" : "row";
  Json e = Json::array();
  for (size_t a = 0; a < m.rows(); ++a) {
    Json row = Json::array();
    for (size_t b = 0; b < m.cols(); ++b) row.push_back(poly_to_json(m.at(a, b), r));
    e.push_back(row);
  }
  j["entries"] = e;
  return j;
}

Json kmatrix_to_json(const KMatrix& m) {
  Json j = Json::array();
  for (size_t a = 0; a < m.rows(); ++a) {
    Json row = Json::array();
    for (size_t b = 0; b < m.cols(); ++b) row.push_back(m.at(a, b).str());
    j.push_back(row);
  }
  return j;
}

FactorCube cube_from_json(const Json& j, Orientation fallback) {
  only_keys(j, {"ring", "type", "dim", "directions", "ranks", "edges", "orientation"}, "cube file");
  RingData ring = ring_from_json(need(j, "ring", "cube file"));
  TypeData type = j.contains("type") ? type_from_json(j["type"], ring) : canonical_type(ring);
  if (ring.custom_omega && j.contains("type")) throw InputError("rings with explicit omega use the identity type");
  const int dim = int_from_json(need(j, "dim", "cube file"), "dim");
  if (dim < 0 || dim > 12) throw InputError("dim out of range");
  std::vector<int> dirs;
  if (j.contains("directions")) {
    if (!j["directions"].is_array() || static_cast<int>(j["directions"].size()) != dim)
      throw InputError("directions must list dim ring indices");
    for (const auto& v : j["directions"]) dirs.push_back(int_from_json(v, "direction") - 1);
  } else {
    if (dim > ring.n) throw InputError("dim exceeds the number of ring variables");
    for (int i = 0; i < dim; ++i) dirs.push_back(i);
  }
  Orientation o = j.contains("orientation") ? orientation_from_json(j["orientation"]) : fallback;
  FactorCube x = FactorCube::zero(ring, type, dim, dirs);
  x.dirs = dirs;
  const Json& rj = need(j, "ranks", "cube file");
  if (!rj.is_object() || rj.size() != x.vertices()) throw InputError("ranks must give one entry per vertex");
  for (auto it = rj.begin(); it != rj.end(); ++it) {
    if (static_cast<int>(it.key().size()) != dim) throw InputError("bad vertex key '" + it.key() + "'");
    unsigned a;
    try {
      a = parse_vertex_key(it.key());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    int v = int_from_json(it.value(), "rank");
    if (v < 0) throw InputError("ranks must be nonnegative");
    x.ranks[a] = v;
  }
  const Json& ej = need(j, "edges", "cube file");
  if (!ej.is_object()) throw InputError("edges must be an object");
  std::vector<std::vector<bool>> seen(dim, std::vector<bool>(x.vertices(), false));
  for (auto it = ej.begin(); it != ej.end(); ++it) {
    const std::string& key = it.key();
    auto at = key.find('@');
    if (key.empty() || key[0] != 'd' || at == std::string::npos) throw InputError("bad edge key '" + key + "'");
    int i;
    try {
      i = std::stoi(key.substr(1, at - 1)) - 1;
    } catch (const std::exception&) {
      throw InputError("bad edge key '" + key + "'");
    }
    std::string vk = key.substr(at + 1);
    if (i < 0 || i >= dim || static_cast<int>(vk.size()) != dim) throw InputError("bad edge key '" + key + "'");
    unsigned a;
    try {
      a = parse_vertex_key(vk);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    x.edge(i, a) = matrix_from_json(it.value(), ring, o);
    seen[i][a] = true;
  }
  for (int i = 0; i < dim; ++i)
    for (unsigned a = 0; a < x.vertices(); ++a)
      if (!seen[i][a]) {
        if (x.ranks[a] == 0 || x.ranks[a ^ (1u << i)] == 0)
          x.edge(i, a) = PolyMatrix(x.ranks[a], x.ranks[a ^ (1u << i)]);
        else
          throw InputError("missing edge d" + std::to_string(i + 1) + "@" + vertex_key(a, dim));
      }
  try {
    x.check_shapes();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return x;
}

Json cube_to_json(const FactorCube& x, Orientation o) {
  Json j;
  j["ring"] = ring_to_json(x.ring);
  if (!(x.type == canonical_type(x.ring))) j["type"] = type_to_json(x.type, x.ring);
  j["dim"] = x.dim;
  bool default_dirs = true;
  for (int i = 0; i < x.dim; ++i) default_dirs = default_dirs && x.dirs[i] == i;
  if (!default_dirs) {
    Json d = Json::array();
    for (int v : x.dirs) d.push_back(v + 1);
    j["directions"] = d;
  }
  j["orientation"] = o == Orientation::column ? "column" : "row";
  Json ranks;
  for (unsigned a : lex_vertices(x.dim)) ranks[vertex_key(a, x.dim)] = x.ranks[a];
  j["ranks"] = ranks;
  Json edges;
  for (int i = 0; i < x.dim; ++i)
    for (unsigned a : lex_vertices(x.dim)) {
      Json m = matrix_to_json(x.edge(i, a), x.ring, o);
      m.erase("orientation");
      edges["d" + std::to_string(i + 1) + "@" + vertex_key(a, x.dim)] = m;
    }
  j["edges"] = edges;
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

FactorCube load_cube(const std::filesystem::path& path, Orientation fallback) {
  return cube_from_json(read_json_file(path), fallback);
}

CubeMorphism morphism_from_json(const Json& j, const FactorCube& base, const std::filesystem::path& dir) {
  only_keys(j, {"source", "target", "components", "orientation"}, "morphism file");
  auto end = [&](const char* key) {
    if (!j.contains(key)) return base;
    const Json& v = j[key];
    if (v.is_string()) return load_cube(dir / v.get<std::string>());
    return cube_from_json(v);
  };
  CubeMorphism f{end("source"), end("target"), {}};
  if (f.source.dim != f.target.dim || !(f.source.ring == f.target.ring))
    throw InputError("morphism ends live over different data");
  Orientation o = j.contains("orientation") ? orientation_from_json(j["orientation"]) : Orientation::row;
  const Json& cj = need(j, "components", "morphism file");
  if (!cj.is_object()) throw InputError("components must be an object");
  f.comps.assign(f.source.vertices(), PolyMatrix());
  std::vector<bool> seen(f.source.vertices(), false);
  for (auto it = cj.begin(); it != cj.end(); ++it) {
    if (static_cast<int>(it.key().size()) != f.source.dim) throw InputError("bad vertex key '" + it.key() + "'");
    unsigned a;
    try {
      a = parse_vertex_key(it.key());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    f.comps[a] = matrix_from_json(it.value(), f.source.ring, o);
    seen[a] = true;
  }
  for (unsigned a = 0; a < f.source.vertices(); ++a) {
    if (!seen[a]) throw InputError("missing component " + vertex_key(a, f.source.dim));
    if (f.comps[a].rows() != f.source.ranks[a] || f.comps[a].cols() != f.target.ranks[a])
      throw InputError("component " + vertex_key(a, f.source.dim) + " has the wrong shape");
  }
  return f;
}

Json module_to_json(const QuotientModule& m) {
  Json j;
  j["dim"] = m.dim;
  Json basis = Json::array();
  for (const auto& [c, mo] : m.basis_labels) {
    Json e = Json::array();
    for (int k = 0; k < m.ring.n; ++k) e.push_back(mo.e[k]);
    Json b;
    b["component"] = c;
    b["e"] = e;
    basis.push_back(b);
  }
  j["basis"] = basis;
  Json acts = Json::array();
  for (const auto& a : m.actions) acts.push_back(kmatrix_to_json(a));
  j["actions"] = acts;
  return j;
}

Json hmf_to_json(const HigherMF& z) {
  Json j;
  j["z0_blocks"] = z.z0_blocks;
  j["z1"] = z.z1;
  j["d"] = matrix_to_json(z.d, z.ring);
  Json h = Json::array();
  for (const auto& m : z.h) h.push_back(matrix_to_json(m, z.ring));
  j["h"] = h;
  return j;
}

}  // namespace factoria
