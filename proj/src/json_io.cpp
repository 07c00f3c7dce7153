#include "ffdioph/json_io.hpp"

#include <stdexcept>

namespace ffdioph {

Json field_to_json(const Field& F) {
  Json j;
  j["p"] = F.p();
  j["k"] = F.k();
  if (F.k() > 1) j["modulus"] = F.modulus();
  return j;
}

FieldPtr field_from_json(const Json& j) {
  unsigned p = j.at("p").get<unsigned>();
  unsigned k = j.value("k", 1u);
  if (k == 1) return make_field(p);
  return make_field(p, k, j.at("modulus").get<std::vector<unsigned>>());
}

Json poly_to_json(const Poly& f) {
  Json arr = Json::array();
  for (Fe c : f.coeffs()) arr.push_back(static_cast<unsigned>(c));
  return arr;
}

Poly poly_from_json(const FieldPtr& F, const Json& j) {
  std::vector<Fe> c;
  for (const auto& v : j) c.push_back(static_cast<Fe>(v.get<unsigned>()));
  return Poly(F, std::move(c));
}

Json laurent_to_json(const Laurent& v) {
  Json j;
  QExp ub = v.norm_upper_bound();
  j["lead_exp"] = v.is_zero_up_to_prec() ? Json(nullptr)
                                         : Json(ub.int_exponent());
  Json coeffs = Json::array();
  if (!v.is_zero_up_to_prec()) {
    long lead = ub.int_exponent();
    for (long e = lead; e >= -v.prec(); --e)
      coeffs.push_back(static_cast<unsigned>(v.digit(e)));
  }
  j["coeffs"] = coeffs;
  j["prec"] = v.prec();
  if (v.is_rational()) {
    const auto& [f, g] = v.rational();
    j["rational"] = Json::array({poly_to_json(f), poly_to_json(g)});
  }
  return j;
}

Laurent laurent_from_json(const FieldPtr& F, const Json& j) {
  long prec = j.at("prec").get<long>();
  if (j.contains("rational")) {
    Poly f = poly_from_json(F, j["rational"][0]);
    Poly g = poly_from_json(F, j["rational"][1]);
    return Laurent::from_rational(f, g, prec);
  }
  if (j.at("lead_exp").is_null())
    return Laurent::truncation(F, 0, {}, prec);
  long lead = j["lead_exp"].get<long>();
  std::vector<Fe> digits;
  for (const auto& v : j.at("coeffs"))
    digits.push_back(static_cast<Fe>(v.get<unsigned>()));
  return Laurent::truncation(F, lead, std::move(digits), prec);
}

Json lattice_to_json(const LatticeBasis& basis) {
  Json j;
  j["d"] = basis.dim();
  j["denom"] = poly_to_json(basis.denom);
  Json cols = Json::array();
  for (long c = 0; c < basis.gens.cols(); ++c) {
    Json col = Json::array();
    for (long r = 0; r < basis.dim(); ++r)
      col.push_back(poly_to_json(basis.gens.at(r, c)));
    cols.push_back(col);
  }
  j["columns"] = cols;
  return j;
}

LatticeBasis lattice_from_json(const FieldPtr& F, const Json& j) {
  long d = j.at("d").get<long>();
  const Json& cols = j.at("columns");
  PolyMat m(F, d, static_cast<long>(cols.size()));
  for (long c = 0; c < m.cols(); ++c)
    for (long r = 0; r < d; ++r) m.at(r, c) = poly_from_json(F, cols[c][r]);
  Poly denom = j.contains("denom") ? poly_from_json(F, j["denom"])
                                   : Poly::one(F);
  return LatticeBasis{std::move(m), std::move(denom)};
}

Json reduced_lattice_to_json(const ReducedLattice& rl) {
  Json j;
  j["d"] = rl.dim();
  j["denom"] = poly_to_json(rl.denom);
  Json cols = Json::array();
  for (long c = 0; c < rl.dim(); ++c) {
    Json col = Json::array();
    for (long r = 0; r < rl.dim(); ++r) col.push_back(poly_to_json(rl.xi.at(r, c)));
    cols.push_back(col);
  }
  j["columns"] = cols;
  j["minima"] = rl.minima_exp;
  j["det_exp"] = rl.det_exp;
  return j;
}

Json approx_pair_to_json(const ApproxPair& u) {
  Json j;
  Json a = Json::array();
  for (const auto& ai : u.a) a.push_back(poly_to_json(ai));
  j["a"] = a;
  j["b"] = poly_to_json(u.b);
  return j;
}

ApproxPair approx_pair_from_json(const FieldPtr& F, const Json& j) {
  ApproxPair u;
  for (const auto& ai : j.at("a")) u.a.push_back(poly_from_json(F, ai));
  u.b = poly_from_json(F, j.at("b"));
  return u;
}

Json best_approx_seq_to_json(const BestApproxSeq& seq) {
  Json j;
  j["degree_bound"] = seq.degree_bound;
  j["theta_rational"] = seq.theta_rational;
  Json entries = Json::array();
  for (const auto& e : seq.entries) {
    Json je = approx_pair_to_json(e.u);
    je["A_exp"] = e.quality.is_zero() ? Json(nullptr)
                                      : Json(e.quality.int_exponent());
    entries.push_back(je);
  }
  j["entries"] = entries;
  return j;
}

Json di_certificate_to_json(const Field& F, const DICertificate& cert) {
  Json j;
  j["field"] = field_to_json(F);
  j["d"] = cert.root.dim();
  j["chooser"] = cert.chooser;
  j["root"] = approx_pair_to_json(cert.root);
  Json eps = Json::array();
  for (const auto& e : cert.eps_schedule) eps.push_back(mpq_to_string(e));
  j["eps_schedule"] = eps;
  j["N_schedule"] = cert.N_schedule;
  j["eps_analytic"] = cert.eps_analytic;
  Json steps = Json::array();
  for (const auto& st : cert.steps) {
    Json js;
    Json m = Json::array();
    for (const auto& mi : st.alpha.m) m.push_back(poly_to_json(mi));
    js["alpha_m"] = m;
    js["alpha_n"] = poly_to_json(st.alpha.n);
    js["shell_k"] = st.shell_k;
    js["s"] = poly_to_json(st.s);
    js["child"] = approx_pair_to_json(st.child);
    js["checks"] = Json{{"alpha_primitive", st.alpha_primitive},
                        {"alpha_lambda_ok", st.alpha_lambda_ok},
                        {"zeta_ok", st.zeta_ok},
                        {"window_ok", st.window_ok},
                        {"nesting_ok", st.nesting_ok},
                        {"lambda1_identity_ok", st.lambda1_identity_ok}};
    steps.push_back(js);
  }
  j["steps"] = steps;
  Json theta = Json::array();
  for (long i = 0; i < cert.theta_prefix.dim(); ++i)
    theta.push_back(laurent_to_json(cert.theta_prefix[i]));
  j["theta_prefix"] = theta;
  return j;
}

DICertificate di_certificate_from_json(const Json& j, FieldPtr* F_out) {
  FieldPtr F = field_from_json(j.at("field"));
  if (F_out) *F_out = F;
  DICertificate cert;
  cert.chooser = j.value("chooser", "lex-first");
  cert.root = approx_pair_from_json(F, j.at("root"));
  for (const auto& e : j.at("eps_schedule"))
    cert.eps_schedule.push_back(parse_rational(e.get<std::string>(), F->q()));
  cert.N_schedule = j.at("N_schedule").get<std::vector<long>>();
  if (j.contains("eps_analytic"))
    cert.eps_analytic = j["eps_analytic"].get<std::vector<double>>();
  for (const auto& js : j.at("steps")) {
    DIStep st;
    for (const auto& mi : js.at("alpha_m"))
      st.alpha.m.push_back(poly_from_json(F, mi));
    st.alpha.n = poly_from_json(F, js.at("alpha_n"));
    st.shell_k = js.at("shell_k").get<long>();
    st.s = poly_from_json(F, js.at("s"));
    st.child = approx_pair_from_json(F, js.at("child"));
    const Json& c = js.at("checks");
    st.alpha_primitive = c.at("alpha_primitive").get<bool>();
    st.alpha_lambda_ok = c.at("alpha_lambda_ok").get<bool>();
    st.zeta_ok = c.at("zeta_ok").get<bool>();
    st.window_ok = c.at("window_ok").get<bool>();
    st.nesting_ok = c.at("nesting_ok").get<bool>();
    st.lambda1_identity_ok = c.at("lambda1_identity_ok").get<bool>();
    cert.steps.push_back(std::move(st));
  }
  std::vector<Laurent> theta;
  for (const auto& t : j.at("theta_prefix"))
    theta.push_back(laurent_from_json(F, t));
  cert.theta_prefix = LVec(std::move(theta));
  return cert;
}

std::string mpq_to_string(const mpq_class& v) { return v.get_str(); }

mpq_class parse_rational(const std::string& s, unsigned q_for_powers) {
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    std::string base = s.substr(0, caret);
    long b = base == "q" ? q_for_powers : std::stol(base);
    long e = std::stol(s.substr(caret + 1));
    return mpq_pow(mpq_class(b), e);
  }
  mpq_class v;
  if (v.set_str(s, 10) != 0)
    throw std::invalid_argument("parse_rational: bad rational '" + s + "'");
  v.canonicalize();
  if (v.get_den() == 0) throw std::invalid_argument("parse_rational: /0");
  return v;
}

std::vector<mpq_class> parse_eps_grid(const std::string& s) {
  // "2^-1..2^-10": geometric grid of q-powers between the endpoints.
  auto dots = s.find("..");
  if (dots == std::string::npos) return {parse_rational(s, 2)};
  std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
  auto c1 = lo.find('^'), c2 = hi.find('^');
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("parse_eps_grid: expected b^e..b^e");
  long base = std::stol(lo.substr(0, c1));
  if (base != std::stol(hi.substr(0, c2)))
    throw std::invalid_argument("parse_eps_grid: mixed bases");
  long e1 = std::stol(lo.substr(c1 + 1));
  long e2 = std::stol(hi.substr(c2 + 1));
  std::vector<mpq_class> out;
  long step = e1 <= e2 ? 1 : -1;
  for (long e = e1;; e += step) {
    out.push_back(mpq_pow(mpq_class(base), e));
    if (e == e2) break;
  }
  return out;
}

}  // namespace ffdioph
