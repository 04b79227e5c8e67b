// Command-line front end. Exit codes: 0 pass, 1 a check failed, 2 invalid
// input, 3 inconclusive.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordloc/duality.hpp"
#include "ordloc/io.hpp"

using namespace ordloc;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string input = "-";
  std::string axiom = "all";
  std::string variant = "em";
  std::size_t max_path_len = 0;
  bool strict = false;
  bool json = false;
  std::string out;
  std::string region;
  std::string target;
  std::string direction = "future";
  std::string what = "hasse";
  bool irreflexive = false;
  // gen
  std::string family;
  int t = 3, x = 3;
  std::string up = "1", down = "1";
  std::string topology = "discrete";
  std::string defects;
  bool lattice = false;
  std::string name;
};

// Collects the report and the exit code of a command.
struct Report {
  std::ostringstream text;
  Json json = Json::object();
  int code = 0;
  void raise(int c) {
    // Failure dominates inconclusive, which dominates success.
    if (c == 1 || (c == 3 && code == 0)) code = c;
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const Options& o, const std::string& s) {
  if (o.out.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorKind::MalformedInput, "cannot write " + o.out);
  f << s;
}

Variant parse_variant(const std::string& v) {
  if (v == "em") return Variant::EM;
  if (v == "upper") return Variant::Upper;
  if (v == "lower") return Variant::Lower;
  throw Error(ErrorKind::MalformedInput, "--variant must be em, upper or lower");
}

Direction parse_direction(const std::string& d) {
  if (d == "future") return Direction::Future;
  if (d == "past") return Direction::Past;
  throw Error(ErrorKind::MalformedInput, "--direction must be future or past");
}

Slope parse_slope(const std::string& s) {
  Slope r;
  auto slash = s.find('/');
  try {
    r.num = std::stoi(s.substr(0, slash));
    r.den = slash == std::string::npos ? 1 : std::stoi(s.substr(slash + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedInput, "bad slope '" + s + "'");
  }
  return r;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedInput, "bad id '" + tok + "'");
    }
  }
  return out;
}

// A region is a comma-separated list of point ids naming an open.
Elem parse_region(const FiniteFrame& f, const std::string& s, const char* flag) {
  Mask m = 0;
  for (int p : parse_ints(s)) {
    if (p < 0 || p >= f.base()) throw Error(ErrorKind::MalformedInput, std::string(flag) + ": point id out of range");
    m |= Mask{1} << p;
  }
  Elem e = f.id(m);
  if (e == kNoElem) throw Error(ErrorKind::MalformedInput, std::string(flag) + ": region is not open");
  return e;
}

struct Loaded {
  Document doc;
  std::shared_ptr<const OrderedLocale> ol;
};

Loaded load(const Options& o) {
  Loaded l{parse_document(read_input(o.input), o.strict), nullptr};
  for (const auto& n : l.doc.notices) std::cerr << "notice: " << n << "\n";
  if (l.doc.space)
    l.ol = std::make_shared<const OrderedLocale>(induced_locale(*l.doc.space, parse_variant(o.variant)));
  else if (l.doc.locale)
    l.ol = l.doc.locale;
  else
    throw Error(ErrorKind::MalformedInput, "this command needs a space, locale or cones document");
  return l;
}

const std::set<std::string> kPointWitness{"T0-ordered", "convex-space", "fixed-point"};

void add_check(Report& r, const Document& d, const CheckReport& c) {
  Json j;
  j["law"] = c.law;
  j["verdict"] = verdict_name(c.verdict);
  j["witness"] = c.witness;
  Json labels = Json::array();
  bool points = kPointWitness.count(c.law) > 0;
  for (std::size_t i = 0; i < c.witness.size(); ++i) {
    Elem w = c.witness[i];
    bool as_point = points && !(c.law == "convex-space" && i == 1);
    if (as_point)
      labels.push_back(w < d.points.size() ? d.points[w] : std::to_string(w));
    else
      labels.push_back(w < d.frame->size() ? element_label(d, w) : std::to_string(w));
  }
  j["witness_labels"] = labels;
  j["note"] = c.note;
  j["exhaustive"] = c.exhaustive;
  j["tuples"] = c.tuples;
  r.json["checks"].push_back(j);
  r.text << c.law << ": " << verdict_name(c.verdict);
  if (!c.exhaustive && c.note.find("sampled") == std::string::npos) r.text << " (sampled)";
  if (!c.witness.empty()) {
    r.text << "  witness";
    for (const auto& lab : labels) r.text << " " << lab.get<std::string>();
  }
  if (!c.note.empty()) r.text << "  [" << c.note << "]";
  r.text << "\n";
  r.raise(c.verdict == Verdict::Fail ? 1 : c.verdict == Verdict::Inconclusive ? 3 : 0);
}

void line(Report& r, const std::string& key, const std::string& value, Json jv) {
  r.text << key << ": " << value << "\n";
  r.json[key] = std::move(jv);
}

std::string labels_of(const Document& d, const std::vector<Elem>& es) {
  std::string s;
  for (Elem e : es) s += (s.empty() ? "" : " ") + element_label(d, e);
  return s;
}

Json label_list(const Document& d, const std::vector<Elem>& es) {
  Json j = Json::array();
  for (Elem e : es) j.push_back(element_label(d, e));
  return j;
}

// ---- commands ----

void cmd_gen(const Options& o, Report& r) {
  GridSpec g;
  g.t_size = o.t;
  g.x_size = o.x;
  g.up_slope = parse_slope(o.up);
  g.down_slope = parse_slope(o.down);
  if (o.topology == "diamond") g.topology = GridTopology::DiamondBasis;
  else if (o.topology != "discrete") throw Error(ErrorKind::MalformedInput, "--topology must be discrete or diamond");
  auto d = parse_ints(o.defects);
  if (d.size() % 2) throw Error(ErrorKind::MalformedInput, "--defects takes t,x pairs");
  for (std::size_t i = 0; i < d.size(); i += 2) g.defects.push_back({d[i], d[i + 1]});
  g.light_cone_lattice = o.lattice;
  std::string name = o.name.empty() ? o.family : o.name;
  Document doc;
  if (o.family == "minkowski") doc = document_from_space(name, minkowski_grid(g));
  else if (o.family == "two-speed") doc = document_from_locale(name, two_speed_grid(g), grid_names(g.t_size, g.x_size));
  else if (o.family == "vertical") doc = document_from_space(name, vertical_grid(o.t, o.x));
  else if (o.family == "non-oc") doc = document_from_space(name, non_OC_example());
  else if (o.family == "bowtie") doc = document_from_space(name, bowtie());
  else doc = document_from_instance(suite_instance(o.family));
  write_output(o, serialize(doc));
  r.json.clear();
}

void cmd_check(const Options& o, Report& r) {
  Loaded l = load(o);
  const auto& ol = *l.ol;
  std::vector<std::string> laws;
  if (o.axiom == "all") {
    laws = axiom_names();
    laws.push_back("bullet");
  } else {
    laws = {o.axiom};
  }
  for (const auto& law : laws) {
    CheckReport c;
    if (law == "bullet") c = check_axiom_P(ol);
    else if (law == "cone-laws") c = check_cone_laws(ol);
    else if (law == "hull-laws") c = check_hull_laws(ol);
    else if (law == "complement-laws") c = check_complement_laws(ol);
    else if (law == "heyting") c = check_heyting_laws(ol.frame());
    else if (law == "regular-cones") c = check_regular_cones(ol);
    else if (law == "biframe") c = is_biframe(ol);
    else if (law == "causal-heyting") c = check_causal_heyting(ol);
    else if (law == "convex") c = is_convex_locale(ol);
    else if (law == "counit") c = counit_check(ol);
    else if (law == "open-cones" || law == "T0-ordered" || law == "convex-space" || law == "unit") {
      if (!l.doc.space) throw Error(ErrorKind::MalformedInput, law + " needs a space document");
      const auto& s = *l.doc.space;
      c = law == "open-cones" ? has_open_cones(s)
          : law == "T0-ordered" ? is_T0_ordered(s)
          : law == "convex-space" ? is_convex_space(s)
                                  : unit_check(s).verdict;
    } else {
      c = check_axiom(ol, law);
    }
    add_check(r, l.doc, c);
  }
}

void cmd_region_op(const Options& o, Report& r, const std::string& op) {
  Loaded l = load(o);
  const auto& ol = *l.ol;
  const auto& d = l.doc;
  std::vector<Elem> regions;
  if (!o.region.empty() || op != "cones") {
    regions.push_back(parse_region(ol.frame(), o.region, "--region"));
  } else {
    if (ol.size() > 128) throw Error(ErrorKind::FrameTooLarge, "give --region for frames above 128 elements");
    for (Elem u = 0; u < ol.size(); ++u) regions.push_back(u);
  }
  for (Elem u : regions) {
    Json j;
    j["region"] = element_label(d, u);
    if (op == "cones") {
      j["up"] = element_label(d, ol.up(u));
      j["down"] = element_label(d, ol.down(u));
      r.text << element_label(d, u) << "  up " << element_label(d, ol.up(u)) << "  down "
             << element_label(d, ol.down(u)) << "\n";
    } else {
      Elem v = op == "hull" ? convex_hull(ol, u) : op == "complement" ? causal_complement(ol, u) : diamond(ol, u);
      j[op] = element_label(d, v);
      r.text << op << " " << element_label(d, u) << " = " << element_label(d, v) << "\n";
    }
    r.json["results"].push_back(j);
  }
}

void cmd_points(const Options& o, Report& r) {
  Loaded l = load(o);
  const auto& d = l.doc;
  // Sober point-realized frames list their points in base order, so base names apply.
  bool base_names = d.space && d.frame->point_realized() && is_T0(*d.frame) && is_sober(*d.frame);
  PointsSpace ps = points_space(*l.ol, base_names ? d.points : std::vector<std::string>{});
  r.text << "points: " << ps.space.size() << "\n";
  Json pts = Json::array();
  for (int i = 0; i < ps.space.size(); ++i) {
    Json up = Json::array();
    for_each_bit(ps.space.up_of(i) & ~(Mask{1} << i), [&](int q) { up.push_back(ps.space.names()[q]); });
    r.text << "  " << ps.space.names()[i] << " prime " << element_label(d, ps.primes[i]) << " up " << up.dump()
           << "\n";
    pts.push_back({{"name", ps.space.names()[i]}, {"prime", element_label(d, ps.primes[i])}, {"up", up}});
  }
  r.json["points"] = pts;
  add_check(r, d, ps.t0_ordered);
  r.json["open_cones"] = verdict_name(ps.open_cones.verdict);
  r.text << "open-cones of pt: " << verdict_name(ps.open_cones.verdict) << "\n";
  if (d.space) {
    UnitReport u = unit_check(*d.space);
    r.text << "unit: sober " << u.sober << ", T0-ordered " << u.t0_ordered << ", open cones " << u.open_cones
           << ", inverse monotone " << u.inverse_monotone << "\n";
    if (!u.inverse_witness.empty()) {
      r.text << "  inverse witness F_" << d.space->names()[u.inverse_witness[0]] << " F_"
             << d.space->names()[u.inverse_witness[1]] << "\n";
    }
    r.json["unit"] = {{"sober", u.sober}, {"t0_ordered", u.t0_ordered}, {"open_cones", u.open_cones},
                      {"monotone", u.monotone}, {"inverse_monotone", u.inverse_monotone},
                      {"inverse_witness", u.inverse_witness}};
    add_check(r, d, u.verdict);
  }
}

void cmd_ips(const Options& o, Report& r) {
  Loaded l = load(o);
  IdealPointSet ip = ideal_points(*l.ol);
  line(r, "ips", std::to_string(ip.ips.size()) + "  " + labels_of(l.doc, ip.ips), label_list(l.doc, ip.ips));
  line(r, "ifs", std::to_string(ip.ifs.size()) + "  " + labels_of(l.doc, ip.ifs), label_list(l.doc, ip.ifs));
  line(r, "paired", ip.paired ? "yes" : "no", ip.paired);
  if (ip.paired) {
    line(r, "bijections", ip.bijections_hold ? "hold" : "fail", ip.bijections_hold);
    if (!ip.bijections_hold) r.raise(1);
  }
}

void cmd_cone_frame(const Options& o, Report& r, Direction dir) {
  Loaded l = load(o);
  ConeFrame cf = cone_frame(*l.ol, dir, false);
  line(r, "size", std::to_string(cf.frame->size()), cf.frame->size());
  line(r, "bottom_adjoined", cf.bottom_adjoined ? "yes" : "no", cf.bottom_adjoined);
  if (cf.frame->size() <= 128) line(r, "elements", labels_of(l.doc, cf.to_ambient), label_list(l.doc, cf.to_ambient));
}

void cmd_dod(const Options& o, Report& r) {
  Loaded l = load(o);
  Elem a = parse_region(l.ol->frame(), o.region, "--region");
  Certain c = domain_of_dependence(*l.ol, a, parse_direction(o.direction), o.max_path_len);
  line(r, "dod", element_label(l.doc, c.value), element_label(l.doc, c.value));
  line(r, "exact", c.exact ? "yes" : "no", c.exact);
  if (!c.exact) r.raise(3);
}

void cmd_cov(const Options& o, Report& r) {
  Loaded l = load(o);
  const auto& f = l.ol->frame();
  Elem a = parse_region(f, o.region, "--region");
  Elem u = parse_region(f, o.target, "--target");
  Direction dir = parse_direction(o.direction);
  CoverageVerdict v = dir == Direction::Past ? covers_below(*l.ol, a, u, o.max_path_len)
                                             : covers_above(*l.ol, a, u, o.max_path_len);
  line(r, "covers", cov_status_name(v.status), cov_status_name(v.status));
  r.json["bound"] = v.bound_used;
  if (!v.witness.steps.empty()) line(r, "witness", labels_of(l.doc, v.witness.steps), label_list(l.doc, v.witness.steps));
  if (!v.note.empty()) line(r, "note", v.note, v.note);
  r.raise(v.status == CovStatus::No ? 1 : v.status == CovStatus::Inconclusive ? 3 : 0);
}

void cmd_grothendieck(const Options& o, Report& r) {
  Loaded l = load(o);
  GrothendieckReport g = check_down_grothendieck(*l.ol, 16, o.max_path_len);
  add_check(r, l.doc, g.report);
  line(r, "abstained", std::to_string(g.abstained), g.abstained);
}

void cmd_dot(const Options& o, Report& r) {
  Loaded l = load(o);
  write_output(o, export_dot(l.doc, o.what, *l.ol));
  r.json.clear();
}

void cmd_ideals(const Options& o, Report& r) {
  Loaded l = load(o);
  std::optional<PointsSpace> ps;
  const OrderedSpace* s = l.doc.space.get();
  if (!s) {
    ps = points_space(*l.ol);
    s = &ps->space;
  }
  int n = s->size();
  std::vector<Mask> rel(n);
  for (int i = 0; i < n; ++i) rel[i] = o.irreflexive ? s->up_of(i) & ~(Mask{1} << i) : s->up_of(i);
  auto ideals = triangle_ideals(n, rel);
  Json list = Json::array();
  r.text << "ideals: " << ideals.size() << "\n";
  for (Mask m : ideals) {
    std::string lab = "{";
    bool first = true;
    for_each_bit(m, [&](int p) { lab += (first ? "" : ",") + s->names()[p], first = false; });
    lab += "}";
    r.text << "  " << lab << "\n";
    list.push_back(lab);
  }
  r.json["ideals"] = list;
  CheckReport c = is_past_semi_full(n, rel);
  r.text << c.law << ": " << verdict_name(c.verdict);
  if (!c.witness.empty()) {
    r.text << "  witness";
    for (Elem w : c.witness) r.text << " " << s->names()[w];
  }
  r.text << "\n";
  r.json["past_semi_full"] = {{"verdict", verdict_name(c.verdict)}, {"witness", c.witness}};
  r.raise(c.verdict == Verdict::Fail ? 1 : 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite ordered locale workbench"};
  app.require_subcommand(1);
  Options o;
  auto input_opts = [&](CLI::App* c) {
    c->add_option("input", o.input, "document file, or - for stdin");
    c->add_option("--variant", o.variant, "order induced on spaces: em, upper or lower");
    c->add_flag("--strict", o.strict, "reject relations that need closing");
    c->add_flag("--json", o.json, "machine-readable report");
    c->add_option("--out", o.out, "output file");
    return c;
  };
  std::map<std::string, CLI::App*> cmds;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    cmds[name] = c;
    return c;
  };

  CLI::App* gen = add("gen", "generate an instance document");
  gen->add_option("family", o.family, "minkowski, two-speed, vertical, non-oc, bowtie or a suite name")->required();
  gen->add_option("--t", o.t, "time extent");
  gen->add_option("--x", o.x, "space extent");
  gen->add_option("--up", o.up, "future slope, n or n/d");
  gen->add_option("--down", o.down, "past slope, n or n/d");
  gen->add_option("--topology", o.topology, "discrete or diamond");
  gen->add_option("--defects", o.defects, "removed points as t,x,t,x,...");
  gen->add_flag("--lattice", o.lattice, "only moves to x+-1");
  gen->add_option("--name", o.name, "document name");
  gen->add_option("--out", o.out, "output file");

  input_opts(add("check", "check axioms"))->add_option("--axiom", o.axiom, "law name or all");
  for (const char* c : {"cones", "hull", "complement", "diamond"})
    input_opts(add(c, std::string("compute ") + c + " of a region"))->add_option("--region", o.region, "point ids");
  input_opts(add("points", "points of the locale and the unit"));
  input_opts(add("ips", "indecomposable past and future sets"));
  input_opts(add("futures", "frame of future cones"));
  input_opts(add("pasts", "frame of past cones"));
  CLI::App* dod = add("dod", "domain of dependence");
  input_opts(dod);
  dod->add_option("--region", o.region, "point ids")->required();
  dod->add_option("--direction", o.direction, "future or past");
  dod->add_option("--max-path-len", o.max_path_len, "coverage bound");
  CLI::App* cov = add("cov", "coverage membership of --region in Cov(--target)");
  input_opts(cov);
  cov->add_option("--region", o.region, "covering region A, point ids")->required();
  cov->add_option("--target", o.target, "covered region U, point ids")->required();
  cov->add_option("--direction", o.direction, "past (Cov-) or future (Cov+)");
  cov->add_option("--max-path-len", o.max_path_len, "coverage bound");
  CLI::App* gr = add("grothendieck", "Grothendieck axioms of the past coverage");
  input_opts(gr);
  gr->add_option("--max-path-len", o.max_path_len, "coverage bound");
  input_opts(add("dot", "DOT export"))->add_option("--what", o.what, "hasse, cones or hulls");
  input_opts(add("ideals", "ideals of the point order"))->add_flag("--irreflexive", o.irreflexive, "strict order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Report r;
  try {
    std::string name;
    for (auto& [n, c] : cmds)
      if (c->parsed()) name = n;
    r.json["command"] = name;
    if (name == "gen") cmd_gen(o, r);
    else if (name == "check") cmd_check(o, r);
    else if (name == "cones" || name == "hull" || name == "complement" || name == "diamond") cmd_region_op(o, r, name);
    else if (name == "points") cmd_points(o, r);
    else if (name == "ips") cmd_ips(o, r);
    else if (name == "futures") cmd_cone_frame(o, r, Direction::Future);
    else if (name == "pasts") cmd_cone_frame(o, r, Direction::Past);
    else if (name == "dod") cmd_dod(o, r);
    else if (name == "cov") cmd_cov(o, r);
    else if (name == "grothendieck") cmd_grothendieck(o, r);
    else if (name == "dot") cmd_dot(o, r);
    else if (name == "ideals") cmd_ideals(o, r);
  } catch (const Error& e) {
    if (o.json) {
      std::cout << Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}, {"exit", 2}}.dump() << "\n";
    }
    std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 2;
  }
  if (r.json.empty()) return r.code;  // document output already written
  r.json["exit"] = r.code;
  write_output(o, o.json ? r.json.dump() + "\n" : r.text.str());
  return r.code;
}
