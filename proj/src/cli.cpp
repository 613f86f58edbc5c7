#include "jetcr/cli.hpp"

#include "jetcr/central.hpp"
#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"
#include "jetcr/marson.hpp"
#include "jetcr/segre.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace jetcr::cli {

namespace {

std::string located(const std::string& file, int line, std::optional<int> term, const std::string& message) {
  std::string s = file + ":" + std::to_string(line) + ": ";
  if (term)
    s += "term " + std::to_string(*term) + ": ";
  return s + message;
}

// Records the line on which every JSON value starts. Runs on text nlohmann has accepted.
class Locator {
public:
  Locator(std::string_view text, std::map<std::string, int>& lines) : s_(text), lines_(lines) {}

  void run() { value(""); }

private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      if (s_[i_] == '\n')
        ++line_;
      ++i_;
    }
  }

  std::string string() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\')
        ++i_;
      if (i_ < s_.size())
        out += s_[i_++];
    }
    ++i_;
    return out;
  }

  void value(const std::string& path) {
    ws();
    lines_[path] = line_;
    if (i_ >= s_.size())
      return;
    char c = s_[i_];
    if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      for (int index = 0;; ++index) {
        ws();
        if (i_ >= s_.size() || s_[i_] == close)
          break;
        std::string key = std::to_string(index);
        if (c == '{') {
          key = string();
          ws();
          ++i_;  // ':'
        }
        value(path + "/" + key);
        ws();
        if (i_ < s_.size() && s_[i_] == ',')
          ++i_;
      }
      ++i_;
    } else if (c == '"') {
      string();
    } else {
      while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_]))
        ++i_;
    }
  }

  std::string_view s_;
  std::map<std::string, int>& lines_;
  std::size_t i_ = 0;
  int line_ = 1;
};

int get_int(const Document& doc, const std::string& key, std::optional<int> fallback = std::nullopt) {
  const Json& root = doc.root;
  if (!root.contains(key)) {
    if (fallback)
      return *fallback;
    doc.fail("", "missing integer field \"" + key + "\"");
  }
  const Json& v = root[key];
  if (!v.is_number_integer())
    doc.fail("/" + key, "\"" + key + "\" must be an integer");
  return v.get<int>();
}

const Json& get_array(const Document& doc, const std::string& pointer) {
  Json::json_pointer p(pointer);
  if (!doc.root.contains(p))
    doc.fail(pointer.substr(0, pointer.rfind('/')), "missing array \"" + pointer.substr(pointer.rfind('/') + 1) + "\"");
  const Json& v = doc.root[p];
  if (!v.is_array())
    doc.fail(pointer, "expected an array of terms");
  return v;
}

int resolve_order(const Document& doc, std::optional<int> order) {
  int k = order ? *order : get_int(doc, "order");
  if (k < 0 || k > 60)
    doc.fail(order ? "" : "/order", "order must lie in 0..60");
  return k;
}

Jet restrict_to_t0(const StructureGerm& g) {
  GermLayout base = g.layout().without_t();
  AlphabetPtr a = base.alphabet();
  Substitution sub = Substitution::by_name(*g.alphabet(), a, g.order());
  for (const auto& t : g.layout().t)
    sub.set(t, Jet(a, g.order()));
  return compose(g.phi(), sub);
}

bool agree(const Jet& a, const Jet& b) {
  int k = std::min(a.order(), b.order());
  return a.truncate(k) == b.truncate(k);
}

Json names_json(const Alphabet& a) { return Json(a.names()); }

std::string names_text(const Alphabet& a) {
  std::string s;
  for (const auto& n : a.names())
    s += (s.empty() ? "" : ", ") + n;
  return s;
}

// Machine-readable and human-readable renderings of one result, built side by side.
class Report {
public:
  explicit Report(const std::string& command) {
    json_["command"] = command;
    text_.push_back("command: " + command);
  }

  void put(const std::string& key, Json value, const std::string& shown) {
    json_[key] = std::move(value);
    text_.push_back(key + ": " + shown);
  }
  void put(const std::string& key, bool value) { put(key, Json(value), value ? "true" : "false"); }
  void put(const std::string& key, int value) { put(key, Json(value), std::to_string(value)); }
  void put(const std::string& key, const std::string& value) { put(key, Json(value), value); }

  void jet(const std::string& key, const Jet& a) { put(key, jet_to_json(a), a.to_string()); }

  void jets(const std::string& key, const std::vector<Jet>& v) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      arr.push_back(jet_to_json(v[i]));
      text_.push_back(key + "[" + std::to_string(i + 1) + "]: " + v[i].to_string());
    }
    json_[key] = std::move(arr);
  }

  void matrix(const std::string& key, const GaussianMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j)
        row.push_back(coefficient_to_json(m(i, j)));
      rows.push_back(std::move(row));
    }
    put(key, std::move(rows), m.to_string());
  }

  void inertia(const std::string& key, const Inertia& in) {
    Json j;
    j["positive"] = in.positive;
    j["negative"] = in.negative;
    j["zero"] = in.zero;
    put(key, std::move(j),
        "(" + std::to_string(in.positive) + ", " + std::to_string(in.negative) + ", " + std::to_string(in.zero) + ")");
  }

  void phi_entries(const std::string& key, const std::vector<std::vector<Jet>>& e) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i; j < e.size(); ++j) {
        Json entry;
        entry["i"] = i + 1;
        entry["j"] = j + 1;
        entry["jet"] = jet_to_json(e[i][j]);
        arr.push_back(std::move(entry));
        text_.push_back(key + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]: " + e[i][j].to_string());
      }
    json_[key] = std::move(arr);
  }

  void warn(const std::string& message) { warnings_.push_back(message); }
  void warn(const std::vector<std::string>& messages) {
    warnings_.insert(warnings_.end(), messages.begin(), messages.end());
  }

  // An invariant that should hold by construction; failure turns the exit status into 3.
  void invariant(const std::string& key, bool holds) {
    put(key, holds);
    ok_ = ok_ && holds;
  }
  bool ok() const { return ok_; }

  void write(std::ostream& out, bool text) {
    if (text) {
      for (const auto& line : text_)
        out << line << "\n";
      for (const auto& w : warnings_)
        out << "warning: " << w << "\n";
    } else {
      json_["warnings"] = warnings_;
      out << json_.dump(2) << "\n";
    }
  }

private:
  Json json_ = Json::object();
  std::vector<std::string> text_;
  std::vector<std::string> warnings_;
  bool ok_ = true;
};

struct Options {
  std::optional<int> order;
  bool check = false;
};

void describe_germ(Report& r, const StructureGerm& g) {
  Json in;
  in["nu"] = g.nu();
  in["nprime"] = g.nprime();
  in["order"] = g.order();
  r.put("input", std::move(in),
        "nu = " + std::to_string(g.nu()) + ", nprime = " + std::to_string(g.nprime()) +
            ", order = " + std::to_string(g.order()));
}

GermFile load_germ(const std::string& path, const Options& o) { return parse_germ(Document::load(path), o.order); }

Report cmd_levi(const std::string& path, const Options& o) {
  GermFile gf = load_germ(path, o);
  Report r("levi");
  describe_germ(r, gf.germ);
  LeviForm lf = levi_form(gf.germ);
  r.matrix("levi_matrix", lf.matrix);
  r.inertia("signature", lf.inertia);
  r.put("nondegenerate", lf.nondegenerate);
  r.put("definite", lf.definite);
  r.put("positive", lf.positive());
  if (o.check)
    r.invariant("hermitian", lf.matrix.is_hermitian());
  r.warn(gf.warnings);
  return r;
}

Report cmd_central(const std::string& path, const Options& o) {
  GermFile gf = load_germ(path, o);
  Report r("central");
  describe_germ(r, gf.germ);
  CentralChart chart = central_manifold(gf.germ);
  StructureGerm st = straighten(gf.germ, chart);
  r.put("base_variables", names_json(*chart.base), names_text(*chart.base));
  r.jets("F", chart.F);
  r.jet("phi_on_central", chart.sigma_phi);
  r.jet("straightened_phi", st.phi());
  r.put("central_hypersurface_trivial", central_cr_hypersurface(chart).trivial);
  if (o.check) {
    bool zero = true;
    for (const auto& res : central_residuals(gf.germ, chart))
      zero = zero && res.is_zero();
    r.invariant("residuals_zero", zero);
  }
  r.warn(gf.warnings);
  return r;
}

Report cmd_normalize(const std::string& path, const Options& o) {
  GermFile gf = load_germ(path, o);
  Report r("normalize");
  describe_germ(r, gf.germ);
  StructureGerm st = straighten(gf.germ, central_manifold(gf.germ));
  MorseNormalForm mn = morse_normalize(st);
  r.jet("phi0", mn.base);
  Json quad = Json::array();
  std::string shown;
  for (std::size_t l = 0; l < mn.quad.size(); ++l) {
    quad.push_back(rational_string(mn.quad[l]));
    shown += (l ? " + " : "") + std::string("(") + rational_string(mn.quad[l]) + ")*T" + std::to_string(l + 1) + "^2";
  }
  r.put("quadratic_form", std::move(quad), shown.empty() ? "0" : shown);
  r.jets("G", mn.G);
  r.put("signature_m", mn.signature_m);
  if (o.check)
    r.invariant("reconstruction_exact", agree(mn.reconstruct(st.alphabet()), st.phi()));
  r.warn("the quadratic form keeps rational coefficients; unit coefficients need square roots of |c_l|");
  r.warn(gf.warnings);
  return r;
}

Report cmd_phi(const std::string& path, const Options& o) {
  GermFile gf = load_germ(path, o);
  Report r("phi");
  describe_germ(r, gf.germ);
  GermLayout layout = gf.germ.layout();
  Jet sigma = gf.germ.phi();
  if (gf.germ.nprime() > 0) {
    CentralHypersurface hyp = central_cr_hypersurface(central_manifold(gf.germ));
    layout = hyp.layout;
    sigma = hyp.sigma_phi;
    r.jet("central_hypersurface", sigma);
  }
  if (layout.nu() == 0)
    throw PreconditionError("phi: no complex variables, Phi is unavailable");
  ComplexDefining cd = complexify_defining(layout, sigma);
  PhiJet det = phi_determinant(cd);
  PhiJet eli = phi_elimination(cd);
  r.put("variables", names_json(*det.alphabet), names_text(*det.alphabet));
  r.put("order", det.order);
  r.phi_entries("Phi", det.entries);
  bool same = det.entries.size() == eli.entries.size();
  for (std::size_t i = 0; same && i < det.entries.size(); ++i)
    for (std::size_t j = 0; j < det.entries.size(); ++j)
      same = same && agree(det.entries[i][j], eli.entries[i][j]);
  r.invariant("routes_agree", same);
  r.put("all_zero", det.is_zero());
  if (o.check)
    r.invariant("reflection_identity", reflection_defect(cd).is_zero());
  r.warn(gf.warnings);
  return r;
}

Report cmd_external(const std::string& path, const Options& o) {
  GermFile gf = load_germ(path, o);
  Report r("external");
  describe_germ(r, gf.germ);
  ExternalLift lift = external_lift(gf.germ);
  ExternalLevi lv = external_levi(lift);
  r.put("lifted_variables", names_json(*lift.lifted.alphabet()), names_text(*lift.lifted.alphabet()));
  r.jet("lifted_phi", lift.lifted.phi());
  r.put("source_rank", lift.source_rank);
  r.put("lifted_rank", lift.lifted_rank);
  r.matrix("levi_matrix", lv.direct.matrix);
  r.inertia("signature", lv.direct.inertia);
  r.matrix("block_matrix", lv.block);
  r.matrix("source_relation_matrix", lv.relation);
  r.invariant("relation_holds", lv.relation_holds);
  r.put("strictly_pseudoconvex", lv.strictly_pseudoconvex);
  r.put("source_definite", lv.source.definite);
  r.warn("the external lift depends on the chosen coordinates of the source germ");
  r.warn(gf.warnings);
  return r;
}

Report cmd_rigid(const std::string& path, const Options& o) {
  GermFile gf = load_germ(path, o);
  Report r("rigid-check");
  describe_germ(r, gf.germ);
  RigidVerdict v = rigid_phi_test(gf.germ);
  r.put("analytic_consistent", v.analytic_consistent);
  std::string shown;
  for (const auto& s : v.offending)
    shown += (shown.empty() ? "" : "; ") + s;
  r.put("offending", Json(v.offending), shown.empty() ? "none" : shown);
  r.put("variables", names_json(*v.phi.alphabet), names_text(*v.phi.alphabet));
  r.phi_entries("Phi", v.phi.entries);
  r.warn("the verdict only sees the jet through the stated order; a pass is necessary, not sufficient");
  r.warn(gf.warnings);
  return r;
}

Report cmd_ode(const std::string& path, const Options& o) {
  HFile hf = parse_h(Document::load(path), o.order);
  Report r("ode");
  r.jet("h", hf.h);
  Jet psi = example_psi(hf.h);
  r.jet("psi", psi);
  if (o.check)
    r.invariant("residual_zero", example_psi_residual(hf.h, psi).is_zero());
  r.warn(hf.warnings);
  return r;
}

Report cmd_lift(const std::string& src, const std::string& dst, const std::string& map, const Options& o) {
  GermFile a = load_germ(src, o), b = load_germ(dst, o);
  const StructureGerm& s = a.germ;
  const StructureGerm& t = b.germ;
  Document mdoc = Document::load(map);
  GermLayout sl = s.layout().without_t();
  int k = o.order ? *o.order : get_int(mdoc, "order", std::min(s.order(), t.order()));
  MapFile mf = parse_map(mdoc, sl, k);
  CentralEquivalence ce{sl, restrict_to_t0(s), t.layout().without_t(), restrict_to_t0(t), mf.f, mf.g};

  Report r("lift");
  describe_germ(r, s);
  LiftedEquivalence le = lift_equivalence(ce, s, t);
  r.put("lambda_variables", names_json(*le.lambda.alphabet()), names_text(*le.lambda.alphabet()));
  r.jet("lambda", le.lambda);
  Json q = Json::array();
  std::string shown;
  for (const auto& x : le.q) {
    q.push_back(rational_string(x));
    shown += (shown.empty() ? "" : ", ") + rational_string(x);
  }
  r.put("t_scaling", std::move(q), shown);
  r.put("variables", names_json(*s.alphabet()), names_text(*s.alphabet()));
  r.jets("X", le.X);
  r.jets("Y", le.Y);
  r.jet("S", le.S);
  r.jets("T", le.T);
  LiftReport rep = verify_lift(le, s, t);
  r.invariant("pullbacks_are_solutions", rep.pullback.solutions);
  r.invariant("holomorphic_images", rep.holomorphic_images);
  r.invariant("restriction_matches", rep.restriction);
  r.invariant("lambda_consistent", rep.lambda_consistent);
  r.put("reliable_order", rep.order);
  r.warn(a.warnings);
  r.warn(b.warnings);
  return r;
}

} // namespace

ParseError::ParseError(const std::string& file, int line, std::optional<int> term, const std::string& message)
    : std::runtime_error(located(file, line, term, message)), line_(line), term_(term) {}

Document Document::parse(const std::string& text, const std::string& file) {
  Document d;
  d.file = file;
  try {
    d.root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1 + int(std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
    if (e.byte > 0 && e.byte <= text.size() && text[e.byte - 1] == '\n')
      --line;
    throw ParseError(file, line, std::nullopt, e.what());
  }
  if (!d.root.is_object())
    throw ParseError(file, 1, std::nullopt, "expected a JSON object");
  Locator(text, d.lines).run();
  return d;
}

Document Document::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(path, 0, std::nullopt, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

int Document::line_of(const std::string& pointer) const {
  std::string p = pointer;
  for (;;) {
    auto it = lines.find(p);
    if (it != lines.end())
      return it->second;
    if (p.empty())
      return 1;
    p = p.substr(0, p.rfind('/'));
  }
}

void Document::fail(const std::string& pointer, const std::string& message, std::optional<int> term) const {
  throw ParseError(file, line_of(pointer), term, message);
}

Json coefficient_to_json(const Gaussian& c) {
  if (c.is_real())
    return rational_string(c.re());
  Json j;
  j["re"] = rational_string(c.re());
  j["im"] = rational_string(c.im());
  return j;
}

Gaussian coefficient_from_json(const Json& j) {
  auto part = [](const Json& v) -> Rational {
    if (v.is_string())
      return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
      return Rational(v.get<long>());
    throw std::invalid_argument("coefficients must be exact rationals written as strings such as \"1/3\"");
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      if (key != "re" && key != "im")
        throw std::invalid_argument("unknown coefficient field \"" + key + "\"");
    return Gaussian(j.contains("re") ? part(j["re"]) : Rational(0), j.contains("im") ? part(j["im"]) : Rational(0));
  }
  return Gaussian(part(j));
}

Json jet_to_json(const Jet& a) {
  const Alphabet& al = *a.alphabet();
  Json terms = Json::array();
  for (const auto& [m, c] : a.terms()) {
    Json e = Json::object();
    for (std::size_t i = 0; i < al.size(); ++i)
      if (m.exponent(i))
        e[al.name(i)] = m.exponent(i);
    Json t;
    t["exponents"] = std::move(e);
    t["coefficient"] = coefficient_to_json(c);
    terms.push_back(std::move(t));
  }
  Json j;
  j["order"] = a.order();
  j["terms"] = std::move(terms);
  return j;
}

Jet jet_from_json(const Json& j, const AlphabetPtr& alphabet) {
  Document d;
  d.file = "<jet>";
  d.root = j;
  return parse_terms(d, "/terms", alphabet, j.at("order").get<int>());
}

Jet parse_terms(const Document& doc, const std::string& pointer, const AlphabetPtr& alphabet, int order,
                int* dropped) {
  const Json& arr = get_array(doc, pointer);
  std::vector<Jet::Term> terms;
  int skipped = 0;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string at = pointer + "/" + std::to_string(k);
    const int term = int(k);
    const Json& t = arr[k];
    if (!t.is_object())
      doc.fail(at, "term must be an object", term);
    for (const auto& [key, value] : t.items())
      if (key != "exponents" && key != "coefficient")
        doc.fail(at + "/" + key, "unknown field \"" + key + "\"", term);
    if (!t.contains("coefficient"))
      doc.fail(at, "missing \"coefficient\"", term);
    Monomial m;
    if (t.contains("exponents")) {
      const Json& e = t["exponents"];
      if (!e.is_object())
        doc.fail(at + "/exponents", "\"exponents\" must map variable names to integers", term);
      for (const auto& [name, value] : e.items()) {
        auto idx = alphabet->find(name);
        if (!idx)
          doc.fail(at + "/exponents/" + name, "unknown variable \"" + name + "\"", term);
        if (!value.is_number_integer() || value.get<long>() < 0 || value.get<long>() > 255)
          doc.fail(at + "/exponents/" + name, "exponent must be an integer in 0..255", term);
        m.set(*idx, m.exponent(*idx) + value.get<unsigned>());
      }
    }
    Gaussian c;
    try {
      c = coefficient_from_json(t["coefficient"]);
    } catch (const std::exception& e) {
      doc.fail(at + "/coefficient", e.what(), term);
    }
    if (int(m.degree()) > order) {
      ++skipped;
      continue;
    }
    terms.emplace_back(m, c);
  }
  if (dropped)
    *dropped = skipped;
  return Jet::from_terms(alphabet, order, std::move(terms));
}

GermFile parse_germ(const Document& doc, std::optional<int> order) {
  for (const auto& [key, value] : doc.root.items())
    if (key != "nu" && key != "nprime" && key != "order" && key != "phi")
      doc.fail("/" + key, "unknown field \"" + key + "\"");
  int nu = get_int(doc, "nu");
  int nprime = get_int(doc, "nprime");
  if (nu < 0 || nprime < 0 || nu + nprime == 0)
    doc.fail("/nu", "need nu, nprime >= 0 with nu + nprime >= 1");
  if (2 * (nu + nprime) + 1 > int(kMaxVariables))
    doc.fail("/nu", "too many variables (2(nu + nprime) + 1 must not exceed " + std::to_string(kMaxVariables) + ")");
  int k = resolve_order(doc, order);
  if (k < 2)
    doc.fail(order ? "" : "/order", "a germ needs order at least 2");
  GermLayout layout = GermLayout::standard(nu, nprime);
  AlphabetPtr a = layout.alphabet();
  int dropped = 0;
  Jet phi = parse_terms(doc, "/phi", a, k, &dropped);
  const Json& arr = doc.root["phi"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    int deg = 0;
    if (arr[i].contains("exponents"))
      for (const auto& [name, value] : arr[i]["exponents"].items())
        deg += value.get<int>();
    if (deg < 2 && !coefficient_from_json(arr[i]["coefficient"]).is_zero())
      doc.fail("/phi/" + std::to_string(i), "phi must have no constant or linear terms", int(i));
  }
  GermFile out{[&] {
                 try {
                   return StructureGerm::build(layout, phi);
                 } catch (const PreconditionError& e) {
                   doc.fail("/phi", e.what());
                 }
               }(),
               {}};
  if (dropped)
    out.warnings.push_back(std::to_string(dropped) + " term(s) above order " + std::to_string(k) + " ignored");
  return out;
}

HFile parse_h(const Document& doc, std::optional<int> order) {
  for (const auto& [key, value] : doc.root.items())
    if (key != "order" && key != "h")
      doc.fail("/" + key, "unknown field \"" + key + "\"");
  int k = resolve_order(doc, order);
  int dropped = 0;
  HFile out{parse_terms(doc, "/h", Alphabet::holomorphic({"xi"}), k, &dropped), {}};
  if (dropped)
    out.warnings.push_back(std::to_string(dropped) + " term(s) above order " + std::to_string(k) + " ignored");
  return out;
}

MapFile parse_map(const Document& doc, const GermLayout& source, int order) {
  for (const auto& [key, value] : doc.root.items())
    if (key != "order" && key != "f" && key != "g")
      doc.fail("/" + key, "unknown field \"" + key + "\"");
  AlphabetPtr a = central_map_alphabet(source);
  if (!doc.root.contains("f") || !doc.root["f"].is_array())
    doc.fail("", "missing array \"f\"");
  if (int(doc.root["f"].size()) != source.nu())
    doc.fail("/f", "\"f\" must have " + std::to_string(source.nu()) + " components");
  MapFile out{{}, parse_terms(doc, "/g", a, order)};
  for (int j = 0; j < source.nu(); ++j)
    out.f.push_back(parse_terms(doc, "/f/" + std::to_string(j), a, order));
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact jet computations for locally integrable structures of hypersurface type", "jetcr"};
  app.require_subcommand(1);
  app.fallthrough();
  int order = -1;
  std::string format = "json";
  bool check = false;
  app.add_option("--order", order, "Override the truncation order K of every input file")->check(CLI::Range(0, 60));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--check", check, "Run the invariant checks of the command and report them");

  std::string f1, f2, f3;
  struct Command {
    const char* name;
    const char* help;
  };
  const std::vector<Command> single = {
      {"levi", "Levi form at the origin"},
      {"central", "Central manifold and straightened germ"},
      {"normalize", "Morse normal form in the t variables"},
      {"phi", "Phi-function of the central hypersurface, by both routes"},
      {"external", "Marson external lift and its Levi form"},
      {"rigid-check", "Phi w-independence test for rigid germs"},
  };
  for (const auto& c : single)
    app.add_subcommand(c.name, c.help)->add_option("germ", f1, "Germ file")->required();
  app.add_subcommand("ode", "psi of the ODE for a rigid radial example")->add_option("hfile", f1, "h file")->required();
  CLI::App* lift = app.add_subcommand("lift", "Lift a central CR equivalence to the full structures");
  lift->add_option("source", f1, "Source germ file")->required();
  lift->add_option("target", f2, "Target germ file")->required();
  lift->add_option("map", f3, "Central map file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Options o;
  if (order >= 0)
    o.order = order;
  o.check = check;
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Report r = cmd == "levi"          ? cmd_levi(f1, o)
               : cmd == "central"     ? cmd_central(f1, o)
               : cmd == "normalize"   ? cmd_normalize(f1, o)
               : cmd == "phi"         ? cmd_phi(f1, o)
               : cmd == "external"    ? cmd_external(f1, o)
               : cmd == "rigid-check" ? cmd_rigid(f1, o)
               : cmd == "ode"         ? cmd_ode(f1, o)
                                      : cmd_lift(f1, f2, f3, o);
    r.write(out, format == "text");
    if (!r.ok()) {
      err << "error: invariant check failed\n";
      return 3;
    }
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

} // namespace jetcr::cli
