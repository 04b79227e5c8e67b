#include "ordloc/io.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ordloc {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::MalformedInput, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path + "/" + key, "missing field");
  return *it;
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long long>();
}

std::pair<long long, long long> int_pair(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad(path, "expected a pair [i,j]");
  return {integer(j[0], path + "/0"), integer(j[1], path + "/1")};
}

struct ParsedFrame {
  FramePtr frame;
  std::vector<Elem> id_of_pos;  // position in the opens list -> element id
};

ParsedFrame parse_opens(int base, const Json& opens, const std::string& path) {
  if (base < 0 || base > 64) bad(path, "base must be in 0..64");
  ParsedFrame out;
  if (opens.is_string() && opens.get<std::string>() == "discrete") {
    if (base > 16) throw Error(ErrorKind::FrameTooLarge, path + ": discrete base above 16 points");
    std::vector<Mask> all(std::size_t{1} << base);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i, out.id_of_pos.push_back(static_cast<Elem>(i));
    out.frame = std::make_shared<const FiniteFrame>(base, std::move(all), true);
    return out;
  }
  if (!opens.is_array()) bad(path, "expected a list of opens or \"discrete\"");
  std::vector<Mask> masks;
  for (std::size_t i = 0; i < opens.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    if (!opens[i].is_array()) bad(p, "expected a list of point ids");
    Mask m = 0;
    for (std::size_t k = 0; k < opens[i].size(); ++k) {
      long long x = integer(opens[i][k], p + "/" + std::to_string(k));
      if (x < 0 || x >= base) bad(p + "/" + std::to_string(k), "point id out of range");
      m |= Mask{1} << x;
    }
    masks.push_back(m);
  }
  try {
    out.frame = frame_from_masks(base, masks);
  } catch (const Error& e) {
    std::string where;
    for (long long w : e.witness()) {
      auto it = std::find(masks.begin(), masks.end(), static_cast<Mask>(w));
      if (it != masks.end()) where += (where.empty() ? "" : " and ") + path + "/" + std::to_string(it - masks.begin());
    }
    throw Error(e.kind(), (where.empty() ? path : where) + ": " + e.what(), e.witness());
  }
  for (Mask m : masks) out.id_of_pos.push_back(out.frame->must_id(m));
  return out;
}

ParsedFrame parse_frame(const Json& j, const std::string& path) {
  long long base = integer(field(j, "base", path), path + "/base");
  return parse_opens(static_cast<int>(base), field(j, "opens", path), path + "/opens");
}

Elem elem_at(const ParsedFrame& pf, long long pos, const std::string& path) {
  if (pos < 0 || pos >= static_cast<long long>(pf.id_of_pos.size())) bad(path, "element index out of range");
  return pf.id_of_pos[pos];
}

Json opens_json(const FiniteFrame& f) {
  if (f.is_powerset()) return "discrete";
  Json out = Json::array();
  for (Elem u = 0; u < f.size(); ++u) {
    Json pts = Json::array();
    for_each_bit(f.mask(u), [&](int p) { pts.push_back(p); });
    out.push_back(pts);
  }
  return out;
}

Json frame_json(const FiniteFrame& f) {
  Json j;
  j["base"] = f.base();
  j["opens"] = opens_json(f);
  return j;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string mask_label(Mask m, const std::vector<std::string>& names) {
  std::string s = "{";
  bool first = true;
  for_each_bit(m, [&](int p) {
    s += (first ? "" : ",") + (p < static_cast<int>(names.size()) ? names[p] : std::to_string(p));
    first = false;
  });
  return s + "}";
}

}  // namespace

Document parse_document(const std::string& text, bool strict) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                           e.what(),
                {static_cast<long long>(line), static_cast<long long>(col)});
  }
  Document d;
  try {
    d.kind = field(j, "kind", "").get<std::string>();
    if (j.contains("name")) d.name = j["name"].get<std::string>();
    if (d.kind == "space") {
      const Json& pts = field(j, "points", "");
      if (!pts.is_array()) bad("/points", "expected a list of names");
      std::vector<std::string> names;
      for (const auto& p : pts) names.push_back(p.get<std::string>());
      int n = static_cast<int>(names.size());
      ParsedFrame pf = parse_opens(n, field(j, "opens", ""), "/opens");
      std::vector<std::pair<int, int>> order;
      const Json& ord = field(j, "order", "");
      if (!ord.is_array()) bad("/order", "expected a list of pairs");
      for (std::size_t i = 0; i < ord.size(); ++i) {
        auto [x, y] = int_pair(ord[i], "/order/" + std::to_string(i));
        if (x < 0 || y < 0 || x >= n || y >= n) bad("/order/" + std::to_string(i), "point id out of range");
        order.push_back({static_cast<int>(x), static_cast<int>(y)});
      }
      d.space = std::make_shared<const OrderedSpace>(n, order, pf.frame, names);
      d.points = names;
      d.frame = pf.frame;
    } else if (d.kind == "locale" || d.kind == "cones" || d.kind == "coverage-table") {
      ParsedFrame pf = parse_frame(field(j, "frame", ""), "/frame");
      d.frame = pf.frame;
      if (j.contains("points")) {
        const Json& pts = j["points"];
        if (!pts.is_array() || static_cast<int>(pts.size()) != pf.frame->base())
          bad("/points", "expected one name per base point");
        for (const auto& p : pts) d.points.push_back(p.get<std::string>());
      }
      std::size_t count = pf.id_of_pos.size();
      if (d.kind == "locale") {
        const Json& rel = field(j, "rel", "");
        if (!rel.is_array()) bad("/rel", "expected a list of pairs");
        std::vector<std::pair<Elem, Elem>> pairs;
        for (std::size_t i = 0; i < rel.size(); ++i) {
          std::string p = "/rel/" + std::to_string(i);
          auto [a, b] = int_pair(rel[i], p);
          pairs.push_back({elem_at(pf, a, p + "/0"), elem_at(pf, b, p + "/1")});
        }
        std::string notice;
        d.locale = std::make_shared<const OrderedLocale>(OrderedLocale::from_relation(pf.frame, pairs, strict, &notice));
        if (!notice.empty()) d.notices.push_back(notice);
      } else if (d.kind == "cones") {
        ConePair cp{pf.frame, std::vector<Elem>(pf.frame->size(), kNoElem), std::vector<Elem>(pf.frame->size(), kNoElem)};
        for (const char* key : {"up", "down"}) {
          const Json& arr = field(j, key, "");
          std::string p = std::string("/") + key;
          if (!arr.is_array() || arr.size() != count) bad(p, "expected one element per open");
          auto& target = key[0] == 'u' ? cp.u : cp.d;
          for (std::size_t i = 0; i < count; ++i)
            target[pf.id_of_pos[i]] = elem_at(pf, integer(arr[i], p + "/" + std::to_string(i)), p + "/" + std::to_string(i));
        }
        if (std::count(cp.u.begin(), cp.u.end(), kNoElem) || std::count(cp.d.begin(), cp.d.end(), kNoElem))
          bad("/frame/opens", "every element must be listed");
        d.locale = std::make_shared<const OrderedLocale>(OrderedLocale::from_monads(cp));
      } else {
        std::size_t m = pf.frame->size();
        for (Direction dir : {Direction::Past, Direction::Future}) {
          const char* key = dir == Direction::Past ? "past" : "future";
          const Json& arr = field(j, key, "");
          std::string p = std::string("/") + key;
          if (!arr.is_array() || arr.size() != count) bad(p, "expected one list per open");
          std::vector<std::vector<Elem>> sets(m);
          for (std::size_t i = 0; i < count; ++i) {
            std::string pi = p + "/" + std::to_string(i);
            if (!arr[i].is_array()) bad(pi, "expected a list of element indices");
            for (std::size_t k = 0; k < arr[i].size(); ++k)
              sets[pf.id_of_pos[i]].push_back(elem_at(pf, integer(arr[i][k], pi + "/" + std::to_string(k)), pi));
          }
          (dir == Direction::Past ? d.past : d.future) = table_from_sets(dir, sets, m);
        }
      }
    } else {
      bad("/kind", "unknown kind '" + d.kind + "'");
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("wrong JSON type: ") + e.what());
  }
  d.text = dump(j);
  return d;
}

std::string serialize(const Document& d) { return d.text; }

Document document_from_space(const std::string& name, const OrderedSpace& s) {
  Json j;
  j["kind"] = "space";
  j["name"] = name;
  j["points"] = s.names();
  Json order = Json::array();
  for (auto [x, y] : s.order_pairs()) order.push_back({x, y});
  j["order"] = order;
  j["opens"] = opens_json(*s.topology());
  Document d;
  d.kind = "space";
  d.name = name;
  d.space = std::make_shared<const OrderedSpace>(s);
  d.points = s.names();
  d.frame = s.topology();
  d.text = dump(j);
  return d;
}

Document document_from_locale(const std::string& name, const OrderedLocale& ol,
                              const std::vector<std::string>& points) {
  Json j;
  Document d;
  d.kind = ol.cone_determined() ? "cones" : "locale";
  j["kind"] = d.kind;
  j["name"] = name;
  if (!points.empty()) j["points"] = points;
  d.points = points;
  j["frame"] = frame_json(ol.frame());
  if (ol.cone_determined()) {
    j["up"] = ol.ups();
    j["down"] = ol.downs();
  } else {
    Json rel = Json::array();
    for (auto [a, b] : ol.pairs())
      if (a != b) rel.push_back({a, b});
    j["rel"] = rel;
  }
  d.name = name;
  d.locale = std::make_shared<const OrderedLocale>(ol);
  d.frame = ol.frame_ptr();
  d.text = dump(j);
  return d;
}

Document document_from_tables(const std::string& name, const FramePtr& f, const CoverageTable& past,
                              const CoverageTable& future, const std::vector<std::string>& points) {
  Json j;
  j["kind"] = "coverage-table";
  j["name"] = name;
  if (!points.empty()) j["points"] = points;
  j["frame"] = frame_json(*f);
  for (const CoverageTable* t : {&past, &future}) {
    Json arr = Json::array();
    for (Elem u = 0; u < f->size(); ++u) {
      Json row = Json::array();
      for (Elem a = 0; a < f->size(); ++a)
        if (t->member[u][a] == CovStatus::Yes) row.push_back(a);
      arr.push_back(row);
    }
    j[t == &past ? "past" : "future"] = arr;
  }
  // Reparse so the tables hold exactly what the text says.
  return parse_document(dump(j));
}

Document document_from_instance(const Instance& inst) {
  return inst.space ? document_from_space(inst.name, *inst.space)
                    : document_from_locale(inst.name, *inst.locale, inst.point_names);
}

std::string element_label(const Document& d, Elem u) {
  return mask_label(d.frame->mask(u), d.points);
}

std::string export_dot(const Document& d, const std::string& what, const OrderedLocale& ol) {
  const FiniteFrame& f = ol.frame();
  const Elem m = f.size();
  if (m > 128) throw Error(ErrorKind::FrameTooLarge, "DOT export is limited to frames of at most 128 elements");
  if (what != "hasse" && what != "cones" && what != "hulls") bad("--what", "expected hasse, cones or hulls");
  std::ostringstream out;
  out << "digraph frame {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Elem u = 0; u < m; ++u) {
    out << "  n" << u << " [label=\"" << element_label(d, u) << "\"";
    if (what == "cones") {
      bool future = ol.up(u) == u, past = ol.down(u) == u;
      if (future || past)
        out << ", style=filled, fillcolor=" << (future && past ? "plum" : future ? "lightblue" : "lightpink");
    } else if (what == "hulls" && is_convex_open(ol, u)) {
      out << ", style=filled, fillcolor=palegreen";
    }
    out << "];\n";
  }
  // Covering pairs of the frame order.
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b) {
      if (a == b || !f.leq(a, b)) continue;
      bool cover = true;
      for (Elem c = 0; c < m && cover; ++c)
        if (c != a && c != b && f.leq(a, c) && f.leq(c, b)) cover = false;
      if (cover) out << "  n" << a << " -> n" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace ordloc
