#include "factoria/cli.hpp"

#include "factoria/examples.hpp"
#include "factoria/hmf.hpp"
#include "factoria/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace factoria {

namespace {

struct Common {
  std::string path;
  std::string orient = "row";
  bool json = false;
};

Orientation parse_orient(const std::string& s) {
  if (s == "row") return Orientation::row;
  if (s == "column") return Orientation::column;
  throw InputError("--orient must be row or column");
}

std::string kmatrix_text(const KMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m.at(r, c).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string basis_label(const std::pair<size_t, Monomial>& b, int n) {
  return "e" + std::to_string(b.first + 1) + "*" + to_string(QPoly::monomial(b.second, Scalar::one(FieldSpec::rationals())), n);
}

std::string ranks_text(const FactorCube& x) {
  std::string s;
  for (unsigned a : lex_vertices(x.dim)) s += (s.empty() ? "" : " ") + vertex_key(a, x.dim) + ":" + std::to_string(x.ranks[a]);
  return s;
}

Json ranks_json(const FactorCube& x) {
  Json j = Json::object();
  for (unsigned a : lex_vertices(x.dim)) j[vertex_key(a, x.dim)] = x.ranks[a];
  return j;
}

struct Verification {
  AxiomReport axioms;
  CheckReport cube;
  bool pass() const { return axioms.pass && cube.pass; }
};

Verification run_verification(const FactorCube& x) {
  Verification v;
  v.axioms = check_type_axioms(x.ring, x.type);
  if (v.axioms.pass) v.cube = verify_cube(x);
  return v;
}

Json verification_json(const FactorCube& x, const Verification& v) {
  Json j;
  j["type_axioms"] = {{"pass", v.axioms.pass}};
  if (!v.axioms.pass) {
    j["type_axioms"]["violated"] = v.axioms.violated;
    j["type_axioms"]["detail"] = v.axioms.detail;
  }
  Json c;
  c["pass"] = v.axioms.pass && v.cube.pass;
  if (v.axioms.pass && !v.cube.pass) {
    c["check"] = v.cube.check;
    c["where"] = v.cube.where;
    c["difference"] = matrix_to_json(v.cube.difference, x.ring);
  }
  j["cube"] = c;
  return j;
}

void verification_text(std::ostream& out, const FactorCube& x, const Verification& v) {
  out << "type axioms: " << (v.axioms.pass ? "pass" : "FAIL " + v.axioms.violated) << "\n";
  if (!v.axioms.pass) {
    if (!v.axioms.detail.empty()) out << "  " << v.axioms.detail << "\n";
    return;
  }
  if (v.cube.pass) {
    out << "cube: pass (dim " << x.dim << ", ranks " << ranks_text(x) << ")\n";
  } else {
    out << "cube: FAIL " << v.cube.check << " " << v.cube.where << "\n";
    out << "  difference " << to_string(v.cube.difference, x.ring.n) << "\n";
  }
}

Json module_report_json(const QuotientModule& m, const ModuleReport* r) {
  Json j = module_to_json(m);
  if (m.hilbert) j["hilbert"] = *m.hilbert;
  if (r) {
    j["annihilator_deg1"] = kmatrix_to_json(r->annihilator_deg1.transpose());
  }
  return j;
}

void module_text(std::ostream& out, const QuotientModule& m) {
  out << "dim " << m.dim << "\n";
  out << "basis:";
  for (const auto& b : m.basis_labels) out << " " << basis_label(b, m.ring.n);
  out << "\n";
  for (size_t i = 0; i < m.actions.size(); ++i) out << "x" << i + 1 << " acts by " << kmatrix_text(m.actions[i]) << "\n";
  if (m.hilbert) {
    out << "hilbert:";
    for (size_t h : *m.hilbert) out << " " << h;
    out << "\n";
  }
}

int emit(std::ostream& out, const Json& j, int code) {
  out << j.dump(2) << "\n";
  return code;
}

// verify

int cmd_verify(const Common& c, std::ostream& out) {
  FactorCube x = load_cube(c.path, parse_orient(c.orient));
  Verification v = run_verification(x);
  int code = v.pass() ? kExitPass : kExitFail;
  if (c.json) {
    Json j;
    j["command"] = "verify";
    j["dim"] = x.dim;
    j["ranks"] = ranks_json(x);
    j.update(verification_json(x, v));
    j["pass"] = v.pass();
    return emit(out, j, code);
  }
  verification_text(out, x, v);
  return code;
}

// tcok

struct TcokOpts {
  bool invariants = false;
  std::string compare;
  int exactness = -1;
};

int cmd_tcok(const Common& c, const TcokOpts& o, std::ostream& out) {
  Orientation orient = parse_orient(c.orient);
  FactorCube x = load_cube(c.path, orient);
  Verification v = run_verification(x);
  if (!v.pass()) {
    if (c.json) {
      Json j;
      j["command"] = "tcok";
      j.update(verification_json(x, v));
      j["pass"] = false;
      return emit(out, j, kExitFail);
    }
    out << "input cube does not verify\n";
    verification_text(out, x, v);
    return kExitFail;
  }
  std::optional<FactorCube> other;
  if (!o.compare.empty()) {
    other = load_cube(o.compare, orient);
    Verification w = run_verification(*other);
    if (!w.pass()) throw InputError("comparison cube " + o.compare + " does not verify");
    if (!(other->ring == x.ring)) throw InputError("comparison cube lives over a different ring");
  }
  QuotientModule m = tcok(x);
  std::optional<QuotientModule> n;
  if (other) n = tcok(*other);
  std::optional<ModuleReport> rep;
  if (o.invariants || n) rep = module_invariants(m, n ? &*n : nullptr);
  std::optional<ExactnessReport> ex;
  int code = kExitPass;
  if (o.exactness >= 0) {
    TotalComplex tc = total_complex(x);
    ex = check_exactness_truncated(tc, o.exactness);
    if (!ex->skipped && !ex->all_exact()) code = kExitFail;
  }

  if (c.json) {
    Json j;
    j["command"] = "tcok";
    j["module"] = module_report_json(m, o.invariants ? &*rep : nullptr);
    if (n) {
      j["compare"] = {{"path", o.compare}, {"dim", n->dim}, {"hom_dim", rep->hom_dim}, {"verdict", to_string(*rep->iso)}};
      if (rep->intertwiner) j["compare"]["intertwiner"] = kmatrix_to_json(*rep->intertwiner);
    }
    if (ex) {
      Json e;
      e["max_degree"] = o.exactness;
      e["skipped"] = ex->skipped;
      if (ex->skipped) e["reason"] = ex->reason;
      Json spots = Json::array();
      for (const auto& s : ex->spots)
        spots.push_back({{"spot", s.spot}, {"degree", s.degree}, {"ker", s.ker}, {"im", s.im}, {"exact", s.exact()}});
      e["spots"] = spots;
      e["all_exact"] = !ex->skipped && ex->all_exact();
      j["exactness"] = e;
    }
    j["pass"] = code == kExitPass;
    return emit(out, j, code);
  }

  module_text(out, m);
  if (o.invariants) {
    const KMatrix& ann = rep->annihilator_deg1;
    out << "degree-1 annihilator: dimension " << ann.cols() << "\n";
    for (size_t col = 0; col < ann.cols(); ++col) {
      QPoly p;
      for (size_t i = 0; i < ann.rows(); ++i) p += QPoly::monomial(Monomial::var(static_cast<int>(i)), ann.at(i, col));
      out << "  " << to_string(p, m.ring.n) << "\n";
    }
  }
  if (n) {
    out << "compare " << o.compare << " (dim " << n->dim << ", hom dim " << rep->hom_dim << "): " << to_string(*rep->iso)
        << "\n";
  }
  if (ex) {
    if (ex->skipped) {
      out << "exactness: skipped (" << ex->reason << ")\n";
    } else if (ex->all_exact()) {
      out << "exactness up to degree " << o.exactness << ": all interior spots exact (" << ex->spots.size()
          << " checked)\n";
    } else {
      auto s = *ex->first_inexact();
      out << "exactness up to degree " << o.exactness << ": NOT exact at spot " << s.spot << " degree " << s.degree
          << " (ker " << s.ker << ", im " << s.im << ")\n";
    }
  }
  return code;
}

// example

struct ExampleOpts {
  std::string name;
  std::string f = "0,0,1";
  std::string factor;
  std::string field = "fp";
  uint64_t p = 101;
  long q = 5;
  std::string l;
  std::string beta;
  int n = 2;
  size_t rank = 1;
};

FieldSpec example_field(const ExampleOpts& o) {
  if (o.field == "rational" || o.field == "Q") return FieldSpec::rationals();
  if (o.field == "fp") {
    try {
      return FieldSpec::prime(o.p);
    } catch (const FieldError& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("--field must be fp or rational");
}

std::vector<int> parse_l(const std::string& text, int n) {
  if (text.empty()) return std::vector<int>(n, 2);
  std::vector<int> l;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument("");
      l.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--l must be a comma-separated list of positive integers");
    }
  }
  return l;
}

unsigned parse_beta(const std::string& text, int dim) {
  std::string key = text.empty() ? std::string(dim, '1') : text;
  if (static_cast<int>(key.size()) != dim) throw InputError("--beta must have one digit per direction");
  try {
    return parse_vertex_key(key);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::vector<Scalar> coefficients(const FieldSpec& f, const std::string& text, const char* flag) {
  try {
    auto c = parse_coefficients(f, text);
    if (c.empty()) throw InputError(std::string(flag) + " is empty");
    return c;
  } catch (const FieldError& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

int cmd_example(const ExampleOpts& o, std::ostream& out) {
  FactorCube x;
  Orientation orient = Orientation::row;
  try {
    if (o.name == "hypersurface") {
      FieldSpec f = example_field(o);
      auto fc = coefficients(f, o.f, "--f");
      auto gc = o.factor.empty() ? std::vector<Scalar>{Scalar::zero(f), Scalar::one(f)} : coefficients(f, o.factor, "--factor");
      x = example_hypersurface(f, fc, gc);
    } else if (o.name == "ci2") {
      FieldSpec f = example_field(o);
      x = example_ci2(f, coefficients(f, o.f, "--f"));
      orient = Orientation::column;
    } else if (o.name == "quantum2") {
      auto l = parse_l(o.l, 2);
      if (l.size() != 2) throw InputError("quantum2 takes --l l1,l2");
      if (o.p > 0xFFFFFFFFull) throw InputError("--p out of range");
      x = example_quantum2(static_cast<uint32_t>(o.p), o.q, l[0], l[1], parse_beta(o.beta, 2), o.rank);
    } else if (o.name == "theta") {
      auto l = parse_l(o.l, o.n);
      int dim = static_cast<int>(l.size());
      x = example_theta(example_field(o), l, parse_beta(o.beta, dim), o.rank);
    } else {
      throw InputError("unknown example '" + o.name + "' (hypersurface, ci2, quantum2, theta)");
    }
  } catch (const FieldError& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  out << cube_to_json(x, orient).dump(2) << "\n";
  return kExitPass;
}

// analyze

struct AnalyzeOpts {
  bool projective = false;
  bool mf0 = false;
  std::string homotopy;
  int degree = -1;
  bool hmf = false;
};

Json projective_json(const ProjectiveResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  Json s = Json::array();
  for (const auto& st : r.splits)
    s.push_back({{"beta", vertex_key(st.beta, r.reduced.dim)}, {"row", st.row}, {"col", st.col}});
  j["splits"] = s;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

int cmd_analyze(const Common& c, const AnalyzeOpts& o, std::ostream& out) {
  namespace fs = std::filesystem;
  FactorCube x = load_cube(c.path, parse_orient(c.orient));
  Verification v = run_verification(x);
  Json j;
  j["command"] = "analyze";
  if (!v.pass()) {
    if (c.json) {
      j.update(verification_json(x, v));
      j["pass"] = false;
      return emit(out, j, kExitFail);
    }
    out << "input cube does not verify\n";
    verification_text(out, x, v);
    return kExitFail;
  }
  int code = kExitPass;
  std::ostringstream text;

  if (o.projective) {
    ProjectiveResult r = projective_test(x);
    j["projective"] = projective_json(r);
    text << "projective: " << to_string(r.verdict);
    if (!r.reason.empty()) text << " (" << r.reason << ")";
    text << "\n";
  }
  if (o.mf0) {
    Mf0Result r = mf0_membership(x);
    Json facets = Json::array();
    text << "mf0: " << (r.member() ? "member" : r.verdict == ProjectiveVerdict::not_projective ? "not a member" : "undetermined") << "\n";
    for (size_t i = 0; i < r.facets.size(); ++i) {
      Json f = projective_json(r.facets[i]);
      f["direction"] = i + 1;
      facets.push_back(f);
      text << "  facet alpha_" << i + 1 << "=1: " << to_string(r.facets[i].verdict) << "\n";
    }
    j["mf0"] = {{"verdict", r.member() ? "member" : to_string(r.verdict)}, {"facets", facets}};
  }
  if (!o.homotopy.empty()) {
    CubeMorphism f;
    if (o.homotopy == "identity") {
      f = identity_morphism(x);
    } else {
      fs::path mp(o.homotopy);
      f = morphism_from_json(read_json_file(mp), x, mp.parent_path());
      for (const FactorCube* end : {&f.source, &f.target}) {
        Verification w = run_verification(*end);
        if (!w.pass()) throw InputError("morphism end does not verify: " + w.cube.check + " " + w.cube.where);
      }
    }
    CheckReport mr = verify_morphism(f);
    Json h;
    h["morphism"] = o.homotopy;
    if (!mr.pass) {
      h["morphism_valid"] = false;
      h["check"] = mr.check;
      h["where"] = mr.where;
      text << "homotopy: morphism fails " << mr.check << " " << mr.where << "\n";
      code = kExitFail;
    } else {
      int d = o.degree >= 0 ? o.degree : default_homotopy_degree(f);
      auto cert = homotopy_solve(f, d);
      h["morphism_valid"] = true;
      h["degree_bound"] = d;
      h["certificate"] = static_cast<bool>(cert);
      if (cert) {
        bool ok = verify_homotopy(f, *cert);
        h["reverified"] = ok;
        Json s = Json::object();
        for (unsigned a : lex_vertices(x.dim)) s[vertex_key(a, x.dim)] = matrix_to_json(cert->s[a], x.ring);
        h["s"] = s;
        text << "homotopy: certificate found within degree " << d << (ok ? ", re-verified" : ", RE-VERIFICATION FAILED")
             << "\n";
        for (unsigned a : lex_vertices(x.dim))
          text << "  s@" << vertex_key(a, x.dim) << " = " << to_string(cert->s[a], x.ring.n) << "\n";
        if (!ok) code = kExitFail;
      } else {
        text << "homotopy: no certificate up to degree " << d << "\n";
      }
    }
    j["homotopy"] = h;
  }
  if (o.hmf) {
    HigherMF z = extract_hmf(x);
    HmfReport r = check_hmf_conditions(z);
    QuotientModule cz = hmf_module(z);
    QuotientModule tc = tcok(x);
    Json h = hmf_to_json(z);
    Json conds = Json::array();
    for (const auto& cnd : r.results) {
      Json e = {{"condition", cnd.condition}, {"q", cnd.q}, {"pass", cnd.pass}};
      if (!cnd.pass) {
        e["where"] = cnd.where;
        e["defect"] = matrix_to_json(cnd.defect, z.ring);
      }
      conds.push_back(e);
    }
    h["conditions"] = conds;
    h["dim_cz"] = cz.dim;
    h["dim_tcok"] = tc.dim;
    h["pass"] = r.pass() && cz.dim == tc.dim;
    j["hmf"] = h;
    text << "hmf: Z0 blocks";
    for (size_t b : z.z0_blocks) text << " " << b;
    text << ", Z1 " << z.z1 << "\n";
    text << "  d = " << to_string(z.d, z.ring.n) << "\n";
    for (size_t q = 0; q < z.h.size(); ++q) text << "  h" << q + 1 << " = " << to_string(z.h[q], z.ring.n) << "\n";
    for (const auto& cnd : r.results) {
      text << "  condition (" << cnd.condition << ") q=" << cnd.q << ": " << (cnd.pass ? "pass" : "FAIL");
      if (!cnd.pass) text << " at " << cnd.where;
      text << "\n";
    }
    text << "  dim C(Z) " << cz.dim << ", dim TCok " << tc.dim << "\n";
    if (!r.pass() || cz.dim != tc.dim) code = kExitFail;
  }
  j["pass"] = code == kExitPass;
  if (c.json) return emit(out, j, code);
  out << text.str();
  return code;
}

void add_common(CLI::App* sub, Common& c, bool orient) {
  sub->add_option("path", c.path, "cube file")->required();
  if (orient) sub->add_option("--orient", c.orient, "orientation of matrices that do not declare one (row|column)");
  sub->add_flag("--json", c.json, "machine-readable report");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"factoria: exact computations with multidimensional matrix factorizations", "factoria"};
  app.require_subcommand(1);

  Common vc, tc, ac;
  auto* verify = app.add_subcommand("verify", "check type axioms and the edge and square conditions");
  add_common(verify, vc, true);

  TcokOpts topt;
  auto* tcok_cmd = app.add_subcommand("tcok", "total cokernel over the quotient algebra");
  add_common(tcok_cmd, tc, true);
  tcok_cmd->add_flag("--invariants", topt.invariants, "annihilator, Hilbert function, endomorphisms");
  tcok_cmd->add_option("--compare", topt.compare, "second cube file to compare total cokernels with");
  tcok_cmd->add_option("--exactness", topt.exactness, "check the total complex up to this internal degree");

  ExampleOpts eopt;
  auto* example = app.add_subcommand("example", "emit a built-in cube file");
  example->add_option("name", eopt.name, "hypersurface | ci2 | quantum2 | theta")->required();
  example->add_option("--f", eopt.f, "ascending coefficients of f");
  example->add_option("--factor", eopt.factor, "ascending coefficients of a divisor of f (hypersurface)");
  example->add_option("--field", eopt.field, "fp | rational");
  example->add_option("--p", eopt.p, "prime modulus");
  example->add_option("--q", eopt.q, "q_12 (quantum2)");
  example->add_option("--l", eopt.l, "exponents l_i, comma separated");
  example->add_option("--beta", eopt.beta, "vertex key of beta (theta, quantum2)");
  example->add_option("--n", eopt.n, "number of directions when --l is omitted (theta)");
  example->add_option("--rank", eopt.rank, "rank of the theta object");

  AnalyzeOpts aopt;
  auto* analyze = app.add_subcommand("analyze", "projectivity, MF^0 membership, homotopies, HMF extraction");
  add_common(analyze, ac, true);
  analyze->add_flag("--projective", aopt.projective, "projectivity test");
  analyze->add_flag("--mf0", aopt.mf0, "per-facet projectivity");
  analyze->add_option("--homotopy", aopt.homotopy, "morphism file, or 'identity'");
  analyze->add_option("--degree", aopt.degree, "degree bound for the homotopy search");
  analyze->add_flag("--hmf", aopt.hmf, "extract and check the higher matrix factorization");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*verify) return cmd_verify(vc, out);
    if (*tcok_cmd) return cmd_tcok(tc, topt, out);
    if (*example) return cmd_example(eopt, out);
    if (*analyze) return cmd_analyze(ac, aopt, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnsupportedConfiguration& e) {
    err << "unsupported configuration: " << e.what() << "\n";
    return kExitInput;
  } catch (const FieldError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}

}  // namespace factoria
